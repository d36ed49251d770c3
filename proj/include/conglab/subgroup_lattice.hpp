#pragma once

#include <cstddef>
#include <vector>

#include "conglab/matgroup.hpp"

namespace conglab {

struct SubgroupClass {
  FinMatGroup rep;
  std::size_t conjugates = 1;  // size of the conjugacy class
  bool normal() const { return conjugates == 1; }
};

/// Every subgroup of G up to G-conjugacy, optionally only those containing
/// -I. Sorted by order, then by element list. Needs |G| <= 4096.
std::vector<SubgroupClass> subgroup_classes(const FinMatGroup& g, bool with_minus_identity = false);

}  // namespace conglab
