#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "conglab/analyzer.hpp"
#include "conglab/caps.hpp"

namespace conglab {

/// A finite-index subgroup of PSL2(Z) as the right action of S and T on its
/// cosets; the subgroup is the stabilizer of point 0.
struct PermRep {
  std::vector<std::uint32_t> S, T;

  std::size_t degree() const { return S.size(); }
  /// i * (ST) = T[S[i]].
  std::uint32_t st(std::uint32_t i) const { return T[S[i]]; }
  /// Throws ParseError on bad arrays, broken relations S^2 = (ST)^3 = 1, or
  /// an intransitive action.
  void validate() const;
  bool operator==(const PermRep&) const = default;
};

PermRep parse_permrep(const nlohmann::json& j);
nlohmann::ordered_json to_json(const PermRep& p);

struct CuspSplit {
  std::vector<std::size_t> widths;  // sorted T-cycle lengths
  std::size_t level = 1;            // their lcm
};

CuspSplit cusp_split(const PermRep& p);

struct LarcherResult {
  bool min_ok = false;  // gcd of the widths is a width
  bool max_ok = false;  // lcm of the widths is a width
  bool pass() const { return min_ok && max_ok; }
};
LarcherResult larcher_check(const CuspSplit& c);

/// |PSL2(Z/n)|, by enumerating SL2(Z/n) and halving for n > 2.
std::size_t psl2_order(std::size_t n, const Caps& caps = Caps{});

struct IndexLevelResult {
  bool star = false;       // index >= level
  bool star_star = false;  // index divides |PSL2(Z/level)|
  std::size_t psl_order = 0;
};
IndexLevelResult index_level_checks(const PermRep& p, const CuspSplit& c,
                                    const Caps& caps = Caps{});

struct ExactResult {
  bool congruence = false;
  std::size_t level = 1;       // level of the congruence test
  std::size_t edges = 0;       // Schreier generators evaluated
  long long failing_edge = -1;  // first Schreier generator moving the base point
};

/// Whether the subgroup contains the principal congruence subgroup of
/// level `multiple` times its cusp level.
ExactResult exact_congruence_test(const PermRep& p, std::size_t multiple = 1,
                                  const Caps& caps = Caps{});

struct ScreenStep {
  std::string name;
  std::string status;  // pass, fail, skipped
  std::string detail;
};
struct PermScreen {
  CuspSplit split;
  std::vector<ScreenStep> steps;
  std::string conclusion;
};

/// Cusp split, Larcher, (*), (**) and the exact test; stops at the first
/// failing screen unless `all` is set.
PermScreen screen_perm(const PermRep& p, bool all, const Caps& caps = Caps{});

/// Minimal (S, T) over relabelings from every base point: a conjugacy-class
/// invariant.
PermRep canonical_conjugacy_form(const PermRep& p);

/// Transitive actions of degree <= max_index, one per conjugacy class of
/// subgroups, sorted by (degree, S, T).
std::vector<PermRep> low_index_enumerate(std::size_t max_index, const Caps& caps = Caps{});

/// The coset action of a frame over Z/n that contains -I, with the coset of
/// the identity as point 0.
PermRep permrep_from_frame(const Frame& f);

}  // namespace conglab
