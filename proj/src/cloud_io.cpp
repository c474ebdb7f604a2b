#include "cnr/cloud_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cnr {

namespace {

void write_number(std::ostream& out, double v) { out << std::setprecision(17) << v; }

double parse_number(const std::string& field, std::size_t line) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParseError("cloud csv: bad number on line " + std::to_string(line));
  return v;
}

}  // namespace

void write_cloud_csv(std::ostream& out, std::span<const Complex> points) {
  out << "re,im\n";
  for (const auto& z : points) {
    write_number(out, z.real());
    out << ',';
    write_number(out, z.imag());
    out << '\n';
  }
}

void write_cloud_csv(const std::string& path, std::span<const Complex> points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  write_cloud_csv(out, points);
  if (!out) throw ParseError("write failed: " + path);
}

std::vector<Complex> read_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || (line != "re,im" && line != "re,im\r"))
    throw ParseError("cloud csv: expected header 're,im'");
  std::vector<Complex> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParseError("cloud csv: expected two fields on line " + std::to_string(lineno));
    out.emplace_back(parse_number(line.substr(0, comma), lineno), parse_number(line.substr(comma + 1), lineno));
  }
  return out;
}

std::vector<Complex> read_cloud_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return read_cloud_csv(in);
}

void write_support_csv(const std::string& path, std::span<const double> theta, std::span<const double> h) {
  if (theta.size() != h.size()) throw InvalidArgument("write_support_csv: length mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << "theta,h\n";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    write_number(out, theta[i]);
    out << ',';
    write_number(out, h[i]);
    out << '\n';
  }
}

}  // namespace cnr
