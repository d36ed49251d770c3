#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conglab/caps.hpp"
#include "conglab/domain.hpp"

namespace conglab {

struct SuiteOptions {
  Caps caps;
  std::uint64_t seed = 1;
  /// Restricts the exhaustive suites to one family such as "Z/12".
  std::optional<std::string> exhaustive;
  unsigned jobs = 1;
};

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // first few failure descriptions

  bool ok() const { return checked == passed; }
  void check(bool ok, const std::string& what);
};

/// A ring D/q written as "Z/12", "F3[t]/(t^2)" or "Q(sqrt(-1))/(3)".
struct Family {
  Domain domain;
  Ideal modulus;
  std::string label;
};
Family parse_family(const std::string& text);

/// SL2(Z/n) for n in {4, 6, 8, 9, 12} and SL2(F3[t]/(t^2)).
std::vector<std::string> default_families();

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);
/// Runs on up to opts.jobs threads; results come back in the order asked.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const SuiteOptions& opts);

}  // namespace conglab
