#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conglab/caps.hpp"
#include "conglab/quotient.hpp"

namespace conglab {

/// A 2x2 matrix over a quotient ring packed as a<<48 | b<<32 | c<<16 | d.
using MatCode = std::uint64_t;

struct Mat2 {
  Residue a, b, c, d;
};

inline MatCode pack(const Mat2& m) {
  return (MatCode{m.a} << 48) | (MatCode{m.b} << 32) | (MatCode{m.c} << 16) | MatCode{m.d};
}
inline Mat2 unpack(MatCode x) {
  return {static_cast<Residue>(x >> 48), static_cast<Residue>((x >> 32) & 0xffff),
          static_cast<Residue>((x >> 16) & 0xffff), static_cast<Residue>(x & 0xffff)};
}

/// Matrix arithmetic in SL2 of a fixed quotient ring.
class SL2 {
 public:
  explicit SL2(RingPtr ring) : ring_(std::move(ring)) {}
  const RingPtr& ring() const { return ring_; }

  MatCode identity() const { return pack({ring_->one(), 0, 0, ring_->one()}); }
  MatCode minus_identity() const {
    Residue m1 = ring_->neg(ring_->one());
    return pack({m1, 0, 0, m1});
  }
  MatCode mul(MatCode x, MatCode y) const {
    const QuotientRing& r = *ring_;
    Mat2 p = unpack(x), q = unpack(y);
    return pack({r.add(r.mul(p.a, q.a), r.mul(p.b, q.c)), r.add(r.mul(p.a, q.b), r.mul(p.b, q.d)),
                 r.add(r.mul(p.c, q.a), r.mul(p.d, q.c)), r.add(r.mul(p.c, q.b), r.mul(p.d, q.d))});
  }
  MatCode inv(MatCode x) const {
    Mat2 p = unpack(x);
    return pack({p.d, ring_->neg(p.b), ring_->neg(p.c), p.a});
  }
  /// g^-1 x g
  MatCode conj(MatCode x, MatCode g) const { return mul(inv(g), mul(x, g)); }
  Residue det(MatCode x) const {
    Mat2 p = unpack(x);
    return ring_->sub(ring_->mul(p.a, p.d), ring_->mul(p.b, p.c));
  }
  /// Throws PreconditionError unless det = 1.
  MatCode make(Residue a, Residue b, Residue c, Residue d) const;

  MatCode T(Residue r) const { return pack({ring_->one(), r, 0, ring_->one()}); }
  MatCode T(Residue alpha, Residue r) const;
  MatCode S(Residue r) const { return pack({ring_->one(), 0, r, ring_->one()}); }
  MatCode R(Residue r) const;
  /// [[1+xab, -xa^2], [xb^2, 1-xab]]; (a, b) must generate the unit ideal.
  MatCode U(Residue a, Residue b, Residue x) const;

  std::string format(MatCode x) const;

 private:
  RingPtr ring_;
};

/// A subgroup of SL2(R): generators plus the sorted closed element list.
class FinMatGroup {
 public:
  FinMatGroup() = default;

  /// BFS closure of gens; throws CapExceeded past cap elements.
  static FinMatGroup closure(const RingPtr& ring, std::vector<MatCode> gens,
                             std::size_t cap = Caps{}.group);
  /// Wraps an already closed, sorted element list with known generators.
  static FinMatGroup trusted(const RingPtr& ring, std::vector<MatCode> gens,
                             std::vector<MatCode> sorted_elements);
  /// A closed set given explicitly; generators are chosen greedily.
  static FinMatGroup from_elements(const RingPtr& ring, std::vector<MatCode> elements);

  const RingPtr& ring() const { return ring_; }
  SL2 ops() const { return SL2(ring_); }
  const std::vector<MatCode>& generators() const { return gens_; }
  const std::vector<MatCode>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains(MatCode x) const;
  /// Position of x in elements(), or npos.
  std::size_t index_of(MatCode x) const;
  bool subgroup_of(const FinMatGroup& g) const;
  bool operator==(const FinMatGroup& o) const { return elems_ == o.elems_; }

  /// g H = H g for every generator g of the ambient group.
  bool is_normal_in(const FinMatGroup& ambient) const;

 private:
  RingPtr ring_;
  std::vector<MatCode> gens_;
  std::vector<MatCode> elems_;
};

/// SL2(R) generated by T and S over the additive generators of R, with its
/// order checked against the local-factor formula.
FinMatGroup full_sl2(const RingPtr& ring, const Caps& caps = Caps{});

/// |SL2(R)| from the factorization of the modulus.
BigInt sl2_order(const QuotientRing& ring);

FinMatGroup normal_closure(const std::vector<MatCode>& gens, const FinMatGroup& ambient,
                           const Caps& caps = Caps{});

/// {X in SL2(R) : X = I mod the image of a}, for a containing the modulus.
FinMatGroup principal_congruence_image(const RingPtr& ring, const Ideal& a,
                                       const Caps& caps = Caps{});

/// g^-1 H g.
FinMatGroup conjugate(const FinMatGroup& h, MatCode g);
FinMatGroup intersect(const FinMatGroup& x, const FinMatGroup& y);

/// Largest normal subgroup of G inside H, via the coset-action kernel.
FinMatGroup core_of(const FinMatGroup& h, const FinMatGroup& g);

/// Image of the Borel group {T(u, r) : u in D*} and of the unipotents {T(r)}.
std::pair<FinMatGroup, FinMatGroup> borel_and_unipotent(const RingPtr& ring);

/// One representative (the minimum code) per right coset H x, in increasing order.
std::vector<MatCode> right_coset_reps(const FinMatGroup& g, const FinMatGroup& h);

/// Right cosets of H in G with the action of G's generators.
struct CosetSpace {
  std::vector<MatCode> labels;                 // minimum element of each coset
  std::vector<std::vector<std::uint32_t>> action;  // action[k][i] = coset of labels[i]*gen_k
};
CosetSpace coset_space(const FinMatGroup& g, const FinMatGroup& h,
                       const std::vector<MatCode>& action_gens);

struct DoubleCoset {
  MatCode rep;       // minimum code in the class
  std::size_t size;  // |H rep B|
};
/// H\G/B classes in increasing order of representative.
std::vector<DoubleCoset> double_cosets(const FinMatGroup& g, const FinMatGroup& h,
                                       const FinMatGroup& b);

FinMatGroup center(const FinMatGroup& g);

struct Lemma11Result {
  bool holds = false;
  std::size_t quotient_order = 0;
  std::size_t expected_order = 0;
};
/// G(q)/G(q') has order |q/q'|^3 and is generated by S, T, R over q,
/// for q containing q' containing q^2.
Lemma11Result lemma_1_1_verify(const Domain& d, const Ideal& q, const Ideal& q2,
                               const Caps& caps = Caps{});

/// Center of SL2(R) is {I, -I}, for R local with 2 invertible.
bool psl2_center_check(const RingPtr& ring, const Caps& caps = Caps{});

}  // namespace conglab
