#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conglab {

/// Dense polynomial over F_p, coefficients low to high, no trailing zeros.
using PrimePoly = std::vector<std::uint32_t>;

/// F_q = F_p[u]/(g) with g monic irreducible of degree e. Elements are the
/// integers 0..q-1 read as base-p digit strings of the coefficients of
/// 1, u, ..., u^(e-1).
class FiniteField {
 public:
  FiniteField() = default;
  /// Throws PreconditionError when modulus is not monic of degree e or is
  /// reducible over F_p.
  FiniteField(std::uint32_t p, unsigned e, PrimePoly modulus);

  /// Field with the fixed modulus for q (u^2+u+1 for 4, u^3+u+1 for 8,
  /// u^2+1 for 9, the first irreducible monic otherwise).
  static FiniteField standard(std::uint32_t p, unsigned e);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint32_t order() const { return q_; }
  const PrimePoly& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  /// Inverse of a nonzero element.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t from_int(long long v) const;
  /// The class of u (only meaningful when e > 1).
  std::uint32_t generator() const { return e_ > 1 ? p_ : 0; }

  std::string format(std::uint32_t a) const;
  std::string format_modulus() const;

  bool operator==(const FiniteField& o) const {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }

  static bool is_irreducible(const PrimePoly& g, std::uint32_t p);
  static PrimePoly poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p);
  static PrimePoly poly_mul(const PrimePoly& a, const PrimePoly& b, std::uint32_t p);

 private:
  std::uint32_t p_ = 0;
  unsigned e_ = 0;
  std::uint32_t q_ = 0;
  PrimePoly modulus_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

}  // namespace conglab
