#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conglab/analyzer.hpp"

namespace conglab {

/// A built-in congruence subgroup together with the side facts its
/// construction produced (search choices, intermediate group orders).
struct Example {
  std::string name;
  Frame frame;
  nlohmann::ordered_json facts = nlohmann::ordered_json::object();
};

std::vector<std::string> example_names();

/// ex2_13 accepts any polynomial domain and prime modulus; the other
/// examples have fixed domains and reject overrides.
Example build_example(const std::string& name, const Caps& caps = Caps{},
                      const std::optional<std::string>& domain = std::nullopt,
                      const std::optional<std::string>& modulus = std::nullopt);

/// Order of x in its group (x must have finite order).
std::size_t element_order(const SL2& ops, MatCode x);

/// Preimage in SL2(F) of an A5 inside PSL2(F) ~ A6, for a quotient field of
/// order 9: the first (2,3,5) generating pair in code order, with -I adjoined.
FinMatGroup a5_preimage(const FinMatGroup& g, const Caps& caps = Caps{});

}  // namespace conglab
