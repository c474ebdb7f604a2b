#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cnr/setgeom.hpp"

namespace cnr {

// CSV with header `re,im`, one point per line, 17 significant digits.
void write_cloud_csv(std::ostream& out, std::span<const Complex> points);
void write_cloud_csv(const std::string& path, std::span<const Complex> points);

// Throws ParseError on a wrong header, malformed rows or non-finite values.
std::vector<Complex> read_cloud_csv(std::istream& in);
std::vector<Complex> read_cloud_csv(const std::string& path);

// CSV with header `theta,h`.
void write_support_csv(const std::string& path, std::span<const double> theta, std::span<const double> h);

}  // namespace cnr
