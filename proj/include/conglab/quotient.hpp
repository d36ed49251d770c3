#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "conglab/caps.hpp"
#include "conglab/domain.hpp"

namespace conglab {

using Residue = std::uint32_t;

/// The finite ring R = D/q with elements encoded as dense indices
/// 0..|R|-1, index 0 being zero.
class QuotientRing {
 public:
  static std::shared_ptr<const QuotientRing> build(const Domain& d, const Ideal& q,
                                                   const Caps& caps = Caps{});

  const Domain& domain() const { return domain_; }
  const Ideal& modulus() const { return modulus_; }
  std::size_t size() const { return lifts_.size(); }
  const PrimeFactorization& factorization() const { return factors_; }
  bool is_local() const { return factors_.size() == 1; }

  Residue reduce(const Element& x) const;
  /// Canonical representative in D.
  const Element& lift(Residue x) const { return lifts_[x]; }
  Residue from_int(long long v) const { return reduce(domain_.from_int(v)); }
  Residue zero() const { return 0; }
  Residue one() const { return one_; }

  Residue add(Residue x, Residue y) const {
    return tables_ ? add_[std::size_t{x} * size() + y] : slow_add(x, y);
  }
  Residue mul(Residue x, Residue y) const {
    return tables_ ? mul_[std::size_t{x} * size() + y] : slow_mul(x, y);
  }
  Residue neg(Residue x) const { return neg_[x]; }
  Residue sub(Residue x, Residue y) const { return add(x, neg(y)); }
  bool is_unit(Residue x) const { return inv_[x] != kNoInverse; }
  /// Throws PreconditionError for non-units.
  Residue inv(Residue x) const;

  /// R*, sorted.
  const std::vector<Residue>& units() const { return units_; }
  /// Image of D* in R*, sorted.
  const std::vector<Residue>& unit_image() const { return unit_image_; }
  /// {u^2 : u in image of D*}, sorted.
  const std::vector<Residue>& square_unit_image() const { return square_units_; }
  /// Residues whose additive span is R.
  const std::vector<Residue>& additive_generators() const { return additive_gens_; }

  std::string format(Residue x) const { return domain_.format(lifts_[x]); }
  Residue parse(const std::string& text) const { return reduce(domain_.parse_element(text)); }

 private:
  QuotientRing(const Domain& d, const Ideal& q) : domain_(d), modulus_(q) {}
  Residue encode(const Element& canonical) const;
  Residue slow_add(Residue x, Residue y) const;
  Residue slow_mul(Residue x, Residue y) const;

  static constexpr Residue kNoInverse = 0xffffffffu;

  Domain domain_;
  Ideal modulus_;
  PrimeFactorization factors_;
  std::vector<Element> lifts_;
  bool tables_ = false;
  std::vector<std::uint16_t> add_, mul_;
  std::vector<Residue> neg_, inv_;
  std::vector<Residue> units_, unit_image_, square_units_, additive_gens_;
  Residue one_ = 0;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

/// An additive subgroup of a quotient ring, stored as a sorted element list.
struct AdditiveSubgroup {
  RingPtr ring;
  std::vector<Residue> elements;
  std::vector<Residue> generators;

  bool contains(Residue x) const;
  bool subset_of(const AdditiveSubgroup& o) const;
  std::size_t index_in_ring() const { return ring->size() / elements.size(); }
  bool operator==(const AdditiveSubgroup& o) const { return elements == o.elements; }
};

/// Smallest additive subgroup containing S; generators picked greedily.
AdditiveSubgroup additive_closure(const RingPtr& ring, const std::vector<Residue>& s);

/// Image of an ideal of D in R.
AdditiveSubgroup ideal_image(const RingPtr& ring, const Ideal& a);

/// Preimage in D of the largest ideal of R contained in A.
Ideal largest_ideal_inside(const AdditiveSubgroup& a);

struct LocalFactor {
  PrimePower prime;
  RingPtr ring;                     // D / p^a
  std::vector<Residue> projection;  // R -> D / p^a
  Element idempotent;               // 1 mod p^a, 0 mod the other factors
};

/// CRT splitting of R into local rings, verified against R's operations.
std::vector<LocalFactor> local_decompose(const RingPtr& ring, const Caps& caps = Caps{});

}  // namespace conglab
