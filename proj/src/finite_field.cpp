#include "conglab/finite_field.hpp"

#include "conglab/errors.hpp"

namespace conglab {

namespace {

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PrimePoly digits(std::uint32_t x, std::uint32_t p, unsigned e) {
  PrimePoly d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = x % p;
    x /= p;
  }
  trim(d);
  return d;
}

std::uint32_t undigits(const PrimePoly& d, std::uint32_t p) {
  std::uint32_t x = 0;
  for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
  return x;
}

std::string poly_text(const PrimePoly& d, const char* var) {
  if (d.empty()) return "0";
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace

PrimePoly FiniteField::poly_mul(const PrimePoly& a, const PrimePoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

PrimePoly FiniteField::poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // inverse of the leading coefficient by Fermat
  std::uint64_t lead_inv = 1, base = m.back();
  for (std::uint32_t k = p - 2; k > 0; k >>= 1) {
    if (k & 1) lead_inv = lead_inv * base % p;
    base = base * base % p;
  }
  while (a.size() > dm) {
    std::uint64_t f = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

bool FiniteField::is_irreducible(const PrimePoly& g, std::uint32_t p) {
  const std::size_t n = g.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  // exhaustive search for a monic factor of degree <= n/2
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t x = 0; x < count; ++x) {
      PrimePoly f(d + 1, 0);
      std::uint64_t y = x;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(y % p);
        y /= p;
      }
      f[d] = 1;
      if (poly_mod(g, f, p).empty()) return false;
    }
  }
  return true;
}

FiniteField::FiniteField(std::uint32_t p, unsigned e, PrimePoly modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
  if (p < 2 || e < 1) throw PreconditionError("invalid field parameters");
  trim(modulus_);
  if (modulus_.size() != e + 1 || modulus_.back() != 1) {
    throw PreconditionError("field modulus must be monic of degree " + std::to_string(e));
  }
  if (!is_irreducible(modulus_, p)) {
    throw PreconditionError("field modulus " + format_modulus() + " is reducible over F_" +
                            std::to_string(p));
  }
  q_ = 1;
  for (unsigned i = 0; i < e; ++i) q_ *= p;
  if (q_ > 1024) throw CapExceeded("field order above 1024 is not supported");
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  std::vector<PrimePoly> d(q_);
  for (std::uint32_t x = 0; x < q_; ++x) d[x] = digits(x, p, e);
  for (std::uint32_t x = 0; x < q_; ++x) {
    PrimePoly nx = d[x];
    for (auto& c : nx) c = (p - c) % p;
    neg_[x] = undigits(nx, p);
    for (std::uint32_t y = 0; y < q_; ++y) {
      PrimePoly s(e, 0);
      for (unsigned i = 0; i < e; ++i) {
        std::uint32_t a = i < d[x].size() ? d[x][i] : 0;
        std::uint32_t b = i < d[y].size() ? d[y][i] : 0;
        s[i] = (a + b) % p;
      }
      add_[x * q_ + y] = undigits(s, p);
      mul_[x * q_ + y] = undigits(poly_mod(poly_mul(d[x], d[y], p), modulus_, p), p);
    }
  }
  for (std::uint32_t x = 1; x < q_; ++x) {
    for (std::uint32_t y = 1; y < q_; ++y) {
      if (mul_[x * q_ + y] == 1) {
        inv_[x] = y;
        break;
      }
    }
  }
}

FiniteField FiniteField::standard(std::uint32_t p, unsigned e) {
  std::uint32_t q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  if (q == 4) return FiniteField(2, 2, {1, 1, 1});
  if (q == 8) return FiniteField(2, 3, {1, 1, 0, 1});
  if (q == 9) return FiniteField(3, 2, {1, 0, 1});
  if (e == 1) return FiniteField(p, 1, {0, 1});
  for (std::uint32_t x = 0; x < q; ++x) {
    PrimePoly g = digits(x, p, e);
    g.resize(e + 1, 0);
    g[e] = 1;
    if (is_irreducible(g, p)) return FiniteField(p, e, g);
  }
  throw InternalError("no irreducible polynomial found");
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0) throw PreconditionError("division by zero in F_" + std::to_string(q_));
  return inv_[a];
}

std::uint32_t FiniteField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::string FiniteField::format(std::uint32_t a) const {
  return poly_text(digits(a, p_, e_), "u");
}

std::string FiniteField::format_modulus() const { return poly_text(modulus_, "u"); }

}  // namespace conglab
