#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conglab/bigint.hpp"
#include "conglab/finite_field.hpp"

namespace conglab {

/// Polynomial over F_q, coefficients (field element indices) low to high,
/// no trailing zeros; the zero polynomial is empty.
struct Poly {
  std::vector<std::uint32_t> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const Poly&) const = default;
};

/// a + b*w in the basis {1, w} of a quadratic order.
struct QuadInt {
  BigInt a, b;
  bool operator==(const QuadInt&) const = default;
};

using Element = std::variant<BigInt, Poly, QuadInt>;

/// Z-basis {a, b + c*w} of an ideal in a quadratic order, 0 <= b < a,
/// printed as [[a,b],[0,c]]. The zero ideal is {0,0,0}.
struct Hnf {
  BigInt a, b, c;
  bool operator==(const Hnf&) const = default;
};

/// Canonical nonzero-or-zero ideal. PID kinds keep a normalized generator
/// (nonnegative integer, monic polynomial), the quadratic kind an HNF.
struct Ideal {
  std::variant<BigInt, Poly, Hnf> rep;
  bool operator==(const Ideal&) const = default;
};

/// Total order used for deterministic output: by norm-like size first.
bool operator<(const Ideal& x, const Ideal& y);

struct PrimePower {
  Ideal prime;
  unsigned exponent = 0;
};
using PrimeFactorization = std::vector<PrimePower>;

struct ConditionLReport {
  bool holds = true;
  std::string failed_clause = "none";  // "i", "ii" or "none"
  std::vector<Ideal> witnesses;
};

enum class DomainKind { integers, polynomials, quadratic };

/// One of Z, F_q[t], or the maximal order of Q(sqrt(m)) with m < 0.
class Domain {
 public:
  static Domain integers();
  static Domain polynomials(FiniteField field);
  /// m squarefree and negative.
  static Domain quadratic(long long m);
  /// "Z", "Fq[t] q=<q> [mod=<poly in u>]" or "Q(sqrt(<m>)) maximal".
  static Domain parse(const std::string& spec);

  DomainKind kind() const { return kind_; }
  const FiniteField& field() const { return *field_; }
  long long m() const { return m_; }
  /// w^2 = c0 + c1*w.
  const BigInt& c0() const { return c0_; }
  const BigInt& c1() const { return c1_; }
  std::string describe() const;
  bool operator==(const Domain& o) const;

  // Elements.
  Element zero() const;
  Element one() const;
  Element from_int(const BigInt& v) const;
  /// t for polynomials, w for quadratic orders, 1 for Z.
  Element variable() const;
  /// Constant polynomial with the given field element.
  Element constant(std::uint32_t field_element) const;
  Element add(const Element& x, const Element& y) const;
  Element sub(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element mul(const Element& x, const Element& y) const;
  Element pow(const Element& x, unsigned k) const;
  bool is_zero(const Element& x) const;
  Element parse_element(const std::string& text) const;
  std::string format(const Element& x) const;
  /// The unit group D* (F_q* for polynomials).
  std::vector<Element> units() const;

  // Ideals.
  Ideal ideal(const std::vector<Element>& gens) const;
  Ideal principal(const Element& x) const { return ideal({x}); }
  Ideal unit_ideal() const { return principal(one()); }
  Ideal sum(const Ideal& x, const Ideal& y) const;
  Ideal product(const Ideal& x, const Ideal& y) const;
  Ideal intersect(const Ideal& x, const Ideal& y) const;
  Ideal power(const Ideal& x, unsigned k) const;
  bool contains(const Ideal& ideal, const Element& x) const;
  /// inner is a subset of outer.
  bool contains(const Ideal& outer, const Ideal& inner) const;
  bool is_unit_ideal(const Ideal& x) const;
  bool is_zero_ideal(const Ideal& x) const;
  /// A small generating set: the generator, or {a, b + c*w}.
  std::vector<Element> basis(const Ideal& x) const;
  /// Canonical representative of x modulo a nonzero ideal.
  Element reduce(const Ideal& modulus, const Element& x) const;
  /// |D/I| for nonzero I.
  BigInt residue_norm(const Ideal& x) const;
  /// u in I, v in J with u + v = 1; requires I + J = D.
  std::pair<Element, Element> bezout(const Ideal& i, const Ideal& j) const;

  PrimeFactorization factor(const Ideal& x, const BigInt& cap) const;
  /// d with d in p_i^a_i but not in p_i^(a_i+1) for every listed pair.
  Element crt_select(const PrimeFactorization& factors) const;
  ConditionLReport condition_L(const Ideal& q, const BigInt& cap) const;

  Ideal parse_ideal(const std::string& text) const;
  std::string format_ideal(const Ideal& x) const;

  // Polynomial helpers (polynomial kind only).
  Poly poly_add(const Poly& x, const Poly& y) const;
  Poly poly_sub(const Poly& x, const Poly& y) const;
  Poly poly_mul(const Poly& x, const Poly& y) const;
  /// Quotient and remainder; divisor nonzero.
  std::pair<Poly, Poly> poly_divmod(const Poly& x, const Poly& y) const;
  Poly poly_monic(const Poly& x) const;
  Poly poly_gcd(Poly x, Poly y) const;

 private:
  Domain() = default;

  Element quad_mul(const QuadInt& x, const QuadInt& y) const;
  Hnf hnf_of(const std::vector<QuadInt>& vectors) const;
  PrimeFactorization factor_poly(const Poly& f, const BigInt& cap) const;
  PrimeFactorization factor_quadratic(const Hnf& h, const BigInt& cap) const;

  DomainKind kind_ = DomainKind::integers;
  std::shared_ptr<const FiniteField> field_;
  long long m_ = 0;
  BigInt c0_, c1_;
};

}  // namespace conglab
