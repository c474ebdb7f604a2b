#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnr/operator_spec.hpp"

namespace cnr {

// One line of the `cnr check` table. `worst` is the largest normalised
// violation seen (<= 0 means every instance held with room to spare), or the
// measured quantity for fixture checks.
struct SuiteRow {
  std::string suite;
  std::string check;
  std::size_t trials = 0;
  double worst = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t trials = 500;
  // Optional user operator pair, exercised by the range and spectrum suites.
  std::optional<OperatorSpec> c;
  std::optional<OperatorSpec> t;
};

std::vector<SuiteRow> run_norm_suite(const SuiteOptions& opt);
std::vector<SuiteRow> run_geometry_suite(const SuiteOptions& opt);
std::vector<SuiteRow> run_range_suite(const SuiteOptions& opt);
std::vector<SuiteRow> run_spectrum_suite(const SuiteOptions& opt);

// name in {norms, geometry, range, spectrum, all}; throws InvalidArgument otherwise.
std::vector<SuiteRow> run_suite(const std::string& name, const SuiteOptions& opt);

void print_suite_table(std::ostream& out, const std::vector<SuiteRow>& rows);

}  // namespace cnr
