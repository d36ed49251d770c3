#include "conglab/domain.hpp"

#include <regex>

#include "conglab/errors.hpp"
#include "expr.hpp"

namespace conglab {

namespace {

void trim(Poly& x) {
  while (!x.c.empty() && x.c.back() == 0) x.c.pop_back();
}

bool squarefree(long long m) {
  unsigned long long n = m < 0 ? static_cast<unsigned long long>(-m) : m;
  for (unsigned long long d = 2; d <= n / d; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

struct PrimePolyOps {
  std::uint32_t p;
  PrimePoly literal(const BigInt& v) {
    PrimePoly r{static_cast<std::uint32_t>(floor_mod(v, p).convert_to<unsigned long>())};
    if (r[0] == 0) r.clear();
    return r;
  }
  PrimePoly variable(const std::string& name) {
    if (name != "u") throw ParseError("field modulus must be a polynomial in u");
    return {0, 1};
  }
  PrimePoly add(const PrimePoly& x, const PrimePoly& y) {
    PrimePoly r(std::max(x.size(), y.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = ((i < x.size() ? x[i] : 0) + (i < y.size() ? y[i] : 0)) % p;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  PrimePoly neg(PrimePoly x) {
    for (auto& c : x) c = (p - c) % p;
    return x;
  }
  PrimePoly sub(const PrimePoly& x, const PrimePoly& y) { return add(x, neg(y)); }
  PrimePoly mul(const PrimePoly& x, const PrimePoly& y) {
    return FiniteField::poly_mul(x, y, p);
  }
  PrimePoly pow(const PrimePoly& x, unsigned k) {
    PrimePoly r{1};
    for (unsigned i = 0; i < k; ++i) r = mul(r, x);
    return r;
  }
};

struct ElementOps {
  const Domain& d;
  Element literal(const BigInt& v) { return d.from_int(v); }
  Element variable(const std::string& name) {
    switch (d.kind()) {
      case DomainKind::polynomials:
        if (name == "t") return d.variable();
        if (name == "u" && d.field().degree() > 1) return d.constant(d.field().generator());
        break;
      case DomainKind::quadratic:
        if (name == "w") return d.variable();
        break;
      case DomainKind::integers:
        break;
    }
    throw ParseError("unknown symbol '" + name + "' for domain " + d.describe());
  }
  Element add(const Element& x, const Element& y) { return d.add(x, y); }
  Element sub(const Element& x, const Element& y) { return d.sub(x, y); }
  Element neg(const Element& x) { return d.neg(x); }
  Element mul(const Element& x, const Element& y) { return d.mul(x, y); }
  Element pow(const Element& x, unsigned k) { return d.pow(x, k); }
};

}  // namespace

Domain Domain::integers() { return Domain(); }

Domain Domain::polynomials(FiniteField field) {
  Domain d;
  d.kind_ = DomainKind::polynomials;
  d.field_ = std::make_shared<const FiniteField>(std::move(field));
  return d;
}

Domain Domain::quadratic(long long m) {
  if (m >= 0) throw PreconditionError("quadratic field needs m < 0, got " + std::to_string(m));
  if (!squarefree(m)) throw PreconditionError(std::to_string(m) + " is not squarefree");
  Domain d;
  d.kind_ = DomainKind::quadratic;
  d.m_ = m;
  long long r = ((m % 4) + 4) % 4;
  if (r == 1) {
    d.c0_ = (BigInt(m) - 1) / 4;
    d.c1_ = 1;
  } else {
    d.c0_ = m;
    d.c1_ = 0;
  }
  return d;
}

Domain Domain::parse(const std::string& desc) {
  static const std::regex z_re(R"(\s*Z\s*)");
  static const std::regex fq_re(R"(\s*Fq\[t\]\s+q=(\d+)(?:\^(\d+))?(?:\s+mod=(\S+))?\s*)");
  static const std::regex quad_re(R"(\s*Q\(sqrt\((-?\d+)\)\)(?:\s+(\S+))?\s*)");
  std::smatch mt;
  if (std::regex_match(desc, z_re)) return integers();
  if (std::regex_match(desc, mt, fq_re)) {
    unsigned long long q = std::stoull(mt[1]);
    if (mt[2].matched) {
      unsigned long long base = q;
      unsigned long long k = std::stoull(mt[2]);
      q = 1;
      for (unsigned long long i = 0; i < k; ++i) {
        q *= base;
        if (q > 1024) throw CapExceeded("field order above 1024 is not supported");
      }
    }
    if (q < 2 || q > 1024) throw CapExceeded("field order must be between 2 and 1024");
    std::uint32_t p = 0;
    for (std::uint32_t c = 2; c <= q; ++c) {
      if (q % c == 0) {
        p = c;
        break;
      }
    }
    unsigned e = 0;
    unsigned long long r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw ParseError("q=" + std::to_string(q) + " is not a prime power");
    if (!mt[3].matched) return polynomials(FiniteField::standard(p, e));
    PrimePolyOps ops{p};
    PrimePoly g = detail::parse_expression<PrimePoly>(mt[3].str(), ops);
    return polynomials(FiniteField(p, e, g));
  }
  if (std::regex_match(desc, mt, quad_re)) {
    if (mt[2].matched && mt[2].str() != "maximal") {
      throw PreconditionError("only maximal orders are supported, got '" + mt[2].str() + "'");
    }
    return quadratic(std::stoll(mt[1]));
  }
  throw ParseError("unrecognized domain '" + desc + "'");
}

std::string Domain::describe() const {
  switch (kind_) {
    case DomainKind::integers:
      return "Z";
    case DomainKind::polynomials: {
      std::string s = "Fq[t] q=" + std::to_string(field_->order());
      if (field_->degree() > 1) s += " mod=" + field_->format_modulus();
      return s;
    }
    case DomainKind::quadratic:
      return "Q(sqrt(" + std::to_string(m_) + ")) maximal";
  }
  return "";
}

bool Domain::operator==(const Domain& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == DomainKind::polynomials) return *field_ == *o.field_;
  return m_ == o.m_;
}

Element Domain::zero() const { return from_int(0); }
Element Domain::one() const { return from_int(1); }

Element Domain::from_int(const BigInt& v) const {
  switch (kind_) {
    case DomainKind::integers:
      return v;
    case DomainKind::polynomials: {
      Poly r{{static_cast<std::uint32_t>(
          floor_mod(v, field_->characteristic()).convert_to<unsigned long>())}};
      trim(r);
      return r;
    }
    case DomainKind::quadratic:
      return QuadInt{v, 0};
  }
  return v;
}

Element Domain::variable() const {
  switch (kind_) {
    case DomainKind::integers:
      return BigInt(1);
    case DomainKind::polynomials:
      return Poly{{0, 1}};
    case DomainKind::quadratic:
      return QuadInt{0, 1};
  }
  return BigInt(1);
}

Element Domain::constant(std::uint32_t a) const {
  Poly r{{a}};
  trim(r);
  return r;
}

Poly Domain::poly_add(const Poly& x, const Poly& y) const {
  Poly r;
  r.c.resize(std::max(x.c.size(), y.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] = field_->add(i < x.c.size() ? x.c[i] : 0, i < y.c.size() ? y.c[i] : 0);
  }
  trim(r);
  return r;
}

Poly Domain::poly_sub(const Poly& x, const Poly& y) const {
  Poly r;
  r.c.resize(std::max(x.c.size(), y.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] = field_->sub(i < x.c.size() ? x.c[i] : 0, i < y.c.size() ? y.c[i] : 0);
  }
  trim(r);
  return r;
}

Poly Domain::poly_mul(const Poly& x, const Poly& y) const {
  if (x.c.empty() || y.c.empty()) return {};
  Poly r;
  r.c.assign(x.c.size() + y.c.size() - 1, 0);
  for (std::size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == 0) continue;
    for (std::size_t j = 0; j < y.c.size(); ++j) {
      r.c[i + j] = field_->add(r.c[i + j], field_->mul(x.c[i], y.c[j]));
    }
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> Domain::poly_divmod(const Poly& x, const Poly& y) const {
  if (y.c.empty()) throw PreconditionError("polynomial division by zero");
  Poly r = x, q;
  const std::size_t dy = y.c.size() - 1;
  const std::uint32_t lead_inv = field_->inv(y.c.back());
  if (r.c.size() > dy) q.c.assign(r.c.size() - dy, 0);
  while (r.c.size() > dy) {
    std::size_t shift = r.c.size() - 1 - dy;
    std::uint32_t f = field_->mul(r.c.back(), lead_inv);
    q.c[shift] = f;
    for (std::size_t i = 0; i <= dy; ++i) {
      r.c[shift + i] = field_->sub(r.c[shift + i], field_->mul(f, y.c[i]));
    }
    trim(r);
  }
  trim(q);
  return {q, r};
}

Poly Domain::poly_monic(const Poly& x) const {
  if (x.c.empty()) return x;
  std::uint32_t inv = field_->inv(x.c.back());
  Poly r = x;
  for (auto& c : r.c) c = field_->mul(c, inv);
  return r;
}

Poly Domain::poly_gcd(Poly x, Poly y) const {
  while (!y.c.empty()) {
    Poly r = poly_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(x);
}

Element Domain::quad_mul(const QuadInt& x, const QuadInt& y) const {
  BigInt bb = x.b * y.b;
  return QuadInt{x.a * y.a + bb * c0_, x.a * y.b + x.b * y.a + bb * c1_};
}

Element Domain::add(const Element& x, const Element& y) const {
  switch (kind_) {
    case DomainKind::integers:
      return std::get<BigInt>(x) + std::get<BigInt>(y);
    case DomainKind::polynomials:
      return poly_add(std::get<Poly>(x), std::get<Poly>(y));
    case DomainKind::quadratic: {
      const auto& a = std::get<QuadInt>(x);
      const auto& b = std::get<QuadInt>(y);
      return QuadInt{a.a + b.a, a.b + b.b};
    }
  }
  return x;
}

Element Domain::neg(const Element& x) const {
  switch (kind_) {
    case DomainKind::integers:
      return BigInt(-std::get<BigInt>(x));
    case DomainKind::polynomials:
      return poly_sub(Poly{}, std::get<Poly>(x));
    case DomainKind::quadratic: {
      const auto& a = std::get<QuadInt>(x);
      return QuadInt{-a.a, -a.b};
    }
  }
  return x;
}

Element Domain::sub(const Element& x, const Element& y) const { return add(x, neg(y)); }

Element Domain::mul(const Element& x, const Element& y) const {
  switch (kind_) {
    case DomainKind::integers:
      return std::get<BigInt>(x) * std::get<BigInt>(y);
    case DomainKind::polynomials:
      return poly_mul(std::get<Poly>(x), std::get<Poly>(y));
    case DomainKind::quadratic:
      return quad_mul(std::get<QuadInt>(x), std::get<QuadInt>(y));
  }
  return x;
}

Element Domain::pow(const Element& x, unsigned k) const {
  Element r = one();
  Element b = x;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    k >>= 1;
    if (k > 0) b = mul(b, b);
  }
  return r;
}

bool Domain::is_zero(const Element& x) const {
  switch (kind_) {
    case DomainKind::integers:
      return std::get<BigInt>(x) == 0;
    case DomainKind::polynomials:
      return std::get<Poly>(x).c.empty();
    case DomainKind::quadratic: {
      const auto& a = std::get<QuadInt>(x);
      return a.a == 0 && a.b == 0;
    }
  }
  return false;
}

Element Domain::parse_element(const std::string& text) const {
  ElementOps ops{*this};
  return detail::parse_expression<Element>(text, ops);
}

std::string Domain::format(const Element& x) const {
  switch (kind_) {
    case DomainKind::integers:
      return to_string(std::get<BigInt>(x));
    case DomainKind::polynomials: {
      const Poly& p = std::get<Poly>(x);
      if (p.c.empty()) return "0";
      std::string out;
      for (std::size_t i = p.c.size(); i-- > 0;) {
        if (p.c[i] == 0) continue;
        if (!out.empty()) out += "+";
        std::string coef = field_->format(p.c[i]);
        if (i == 0) {
          out += coef;
          continue;
        }
        if (p.c[i] != 1) {
          out += coef.find('+') != std::string::npos ? "(" + coef + ")*" : coef + "*";
        }
        out += "t";
        if (i > 1) out += "^" + std::to_string(i);
      }
      return out;
    }
    case DomainKind::quadratic: {
      const auto& q = std::get<QuadInt>(x);
      if (q.b == 0) return to_string(q.a);
      std::string w = q.b == 1 ? "w" : q.b == -1 ? "-w" : to_string(q.b) + "*w";
      if (q.a == 0) return w;
      return to_string(q.a) + (q.b > 0 ? "+" : "") + w;
    }
  }
  return "";
}

std::vector<Element> Domain::units() const {
  switch (kind_) {
    case DomainKind::integers:
      return {BigInt(1), BigInt(-1)};
    case DomainKind::polynomials: {
      std::vector<Element> out;
      for (std::uint32_t a = 1; a < field_->order(); ++a) out.push_back(constant(a));
      return out;
    }
    case DomainKind::quadratic: {
      std::vector<Element> out{QuadInt{1, 0}, QuadInt{-1, 0}};
      if (m_ == -1) {
        out.push_back(QuadInt{0, 1});
        out.push_back(QuadInt{0, -1});
      } else if (m_ == -3) {
        out.push_back(QuadInt{0, 1});
        out.push_back(QuadInt{0, -1});
        out.push_back(QuadInt{-1, 1});
        out.push_back(QuadInt{1, -1});
      }
      return out;
    }
  }
  return {};
}

}  // namespace conglab
