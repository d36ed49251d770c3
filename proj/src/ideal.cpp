#include <algorithm>
#include <regex>

#include "conglab/domain.hpp"
#include "conglab/errors.hpp"

namespace conglab {

namespace {

// A lattice vector x + y*w carrying the integer combination of the input
// vectors that produced it.
struct Tracked {
  BigInt x, y;
  std::vector<BigInt> coeff;
};

Tracked combine(const BigInt& s, const Tracked& u, const BigInt& t, const Tracked& v) {
  Tracked r{s * u.x + t * v.x, s * u.y + t * v.y, {}};
  r.coeff.resize(u.coeff.size());
  for (std::size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = s * u.coeff[i] + t * v.coeff[i];
  return r;
}

// Column-style HNF of a planar lattice: returns (zrow, top) with
// zrow = (a, 0) and top = (b, c), 0 <= b < a, c > 0 for full-rank input.
std::pair<Tracked, Tracked> tracked_hnf(const std::vector<Tracked>& vs) {
  const std::size_t k = vs.empty() ? 0 : vs[0].coeff.size();
  Tracked zrow{0, 0, std::vector<BigInt>(k, 0)};
  Tracked top{0, 0, std::vector<BigInt>(k, 0)};
  auto absorb_x = [&](const Tracked& w) {
    if (w.x == 0) return;
    ExtGcd e = ext_gcd(zrow.x, w.x);
    zrow = combine(e.s, zrow, e.t, w);
  };
  for (const Tracked& v : vs) {
    if (v.y == 0) {
      absorb_x(v);
      continue;
    }
    if (top.y == 0) {
      absorb_x(top);
      top = v;
      continue;
    }
    ExtGcd e = ext_gcd(top.y, v.y);
    Tracked next = combine(e.s, top, e.t, v);
    Tracked rest = combine(v.y / e.g, top, -(top.y / e.g), v);
    top = std::move(next);
    absorb_x(rest);
  }
  if (top.y < 0) top = combine(-1, top, 0, top);
  if (zrow.x < 0) zrow = combine(-1, zrow, 0, zrow);
  if (zrow.x != 0) {
    BigInt q = floor_div(top.x, zrow.x);
    top = combine(1, top, -q, zrow);
  }
  return {zrow, top};
}

std::pair<Poly, Poly> poly_ext_gcd_coeffs(const Domain& d, const Poly& a, const Poly& b) {
  // s*a + t*b = gcd (monic)
  Poly r0 = a, r1 = b, s0{{1}}, s1{}, t0{}, t1{{1}};
  while (!r1.c.empty()) {
    auto [q, r] = d.poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = d.poly_sub(s0, d.poly_mul(q, s1));
    Poly t2 = d.poly_sub(t0, d.poly_mul(q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.c.empty()) return {s0, t0};
  Poly inv{{d.field().inv(r0.c.back())}};
  return {d.poly_mul(s0, inv), d.poly_mul(t0, inv)};
}

bool poly_less(const Poly& x, const Poly& y) {
  if (x.c.size() != y.c.size()) return x.c.size() < y.c.size();
  for (std::size_t i = x.c.size(); i-- > 0;) {
    if (x.c[i] != y.c[i]) return x.c[i] < y.c[i];
  }
  return false;
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool operator<(const Ideal& x, const Ideal& y) {
  if (x.rep.index() != y.rep.index()) return x.rep.index() < y.rep.index();
  if (auto* a = std::get_if<BigInt>(&x.rep)) return *a < std::get<BigInt>(y.rep);
  if (auto* a = std::get_if<Poly>(&x.rep)) return poly_less(*a, std::get<Poly>(y.rep));
  const Hnf& a = std::get<Hnf>(x.rep);
  const Hnf& b = std::get<Hnf>(y.rep);
  BigInt na = a.a * a.c, nb = b.a * b.c;
  if (na != nb) return na < nb;
  if (a.a != b.a) return a.a < b.a;
  return a.b < b.b;
}

Hnf Domain::hnf_of(const std::vector<QuadInt>& vectors) const {
  std::vector<Tracked> vs;
  vs.reserve(vectors.size());
  for (const auto& v : vectors) vs.push_back({v.a, v.b, {}});
  auto [zrow, top] = tracked_hnf(vs);
  if (top.y == 0 || zrow.x == 0) return Hnf{0, 0, 0};
  return Hnf{zrow.x, top.x, top.y};
}

Ideal Domain::ideal(const std::vector<Element>& gens) const {
  switch (kind_) {
    case DomainKind::integers: {
      BigInt g = 0;
      for (const auto& x : gens) g = gcd(g, std::get<BigInt>(x));
      return Ideal{g};
    }
    case DomainKind::polynomials: {
      Poly g;
      for (const auto& x : gens) g = poly_gcd(g, std::get<Poly>(x));
      return Ideal{g};
    }
    case DomainKind::quadratic: {
      std::vector<QuadInt> vs;
      for (const auto& x : gens) {
        vs.push_back(std::get<QuadInt>(x));
        vs.push_back(std::get<QuadInt>(mul(x, variable())));
      }
      return Ideal{hnf_of(vs)};
    }
  }
  return Ideal{BigInt(0)};
}

std::vector<Element> Domain::basis(const Ideal& x) const {
  switch (kind_) {
    case DomainKind::integers:
      return {std::get<BigInt>(x.rep)};
    case DomainKind::polynomials:
      return {std::get<Poly>(x.rep)};
    case DomainKind::quadratic: {
      const Hnf& h = std::get<Hnf>(x.rep);
      if (h.a == 0) return {QuadInt{0, 0}};
      return {QuadInt{h.a, 0}, QuadInt{h.b, h.c}};
    }
  }
  return {};
}

bool Domain::is_zero_ideal(const Ideal& x) const {
  switch (kind_) {
    case DomainKind::integers:
      return std::get<BigInt>(x.rep) == 0;
    case DomainKind::polynomials:
      return std::get<Poly>(x.rep).c.empty();
    case DomainKind::quadratic:
      return std::get<Hnf>(x.rep).a == 0;
  }
  return false;
}

bool Domain::is_unit_ideal(const Ideal& x) const { return x == unit_ideal(); }

Ideal Domain::sum(const Ideal& x, const Ideal& y) const {
  if (x.rep.index() != y.rep.index()) throw PreconditionError("ideals of different domains");
  if (kind_ != DomainKind::quadratic) return ideal({basis(x)[0], basis(y)[0]});
  std::vector<QuadInt> vs;
  for (const auto& e : basis(x)) vs.push_back(std::get<QuadInt>(e));
  for (const auto& e : basis(y)) vs.push_back(std::get<QuadInt>(e));
  return Ideal{hnf_of(vs)};
}

Ideal Domain::product(const Ideal& x, const Ideal& y) const {
  if (x.rep.index() != y.rep.index()) throw PreconditionError("ideals of different domains");
  if (kind_ != DomainKind::quadratic) return ideal({mul(basis(x)[0], basis(y)[0])});
  std::vector<QuadInt> vs;
  for (const auto& e : basis(x)) {
    for (const auto& f : basis(y)) vs.push_back(std::get<QuadInt>(mul(e, f)));
  }
  return Ideal{hnf_of(vs)};
}

Ideal Domain::power(const Ideal& x, unsigned k) const {
  Ideal r = unit_ideal();
  for (unsigned i = 0; i < k; ++i) r = product(r, x);
  return r;
}

Ideal Domain::intersect(const Ideal& x, const Ideal& y) const {
  if (x.rep.index() != y.rep.index()) throw PreconditionError("ideals of different domains");
  if (is_zero_ideal(x)) return x;
  if (is_zero_ideal(y)) return y;
  switch (kind_) {
    case DomainKind::integers:
      return Ideal{lcm(std::get<BigInt>(x.rep), std::get<BigInt>(y.rep))};
    case DomainKind::polynomials: {
      const Poly& a = std::get<Poly>(x.rep);
      const Poly& b = std::get<Poly>(y.rep);
      Poly g = poly_gcd(a, b);
      return Ideal{poly_monic(poly_mul(poly_divmod(a, g).first, b))};
    }
    case DomainKind::quadratic: {
      const Hnf& i = std::get<Hnf>(x.rep);
      const Hnf& j = std::get<Hnf>(y.rep);
      // rows of I at height y satisfy x = b1*y/c1 (mod a1); likewise for J
      BigInt ell = lcm(i.c, j.c);
      BigInt delta = i.b * (ell / i.c) - j.b * (ell / j.c);
      BigInt g = gcd(i.a, j.a);
      BigInt k0 = g / gcd(g, delta);
      BigInt c3 = k0 * ell;
      BigInt x3, a3;
      if (!crt_pair(floor_mod(i.b * (c3 / i.c), i.a), i.a, floor_mod(j.b * (c3 / j.c), j.a), j.a,
                    x3, a3)) {
        throw InternalError("inconsistent lattice intersection");
      }
      return Ideal{Hnf{a3, floor_mod(x3, a3), c3}};
    }
  }
  return x;
}

bool Domain::contains(const Ideal& ideal, const Element& x) const {
  switch (kind_) {
    case DomainKind::integers: {
      const BigInt& n = std::get<BigInt>(ideal.rep);
      const BigInt& v = std::get<BigInt>(x);
      return n == 0 ? v == 0 : v % n == 0;
    }
    case DomainKind::polynomials: {
      const Poly& f = std::get<Poly>(ideal.rep);
      const Poly& v = std::get<Poly>(x);
      return f.c.empty() ? v.c.empty() : poly_divmod(v, f).second.c.empty();
    }
    case DomainKind::quadratic: {
      const Hnf& h = std::get<Hnf>(ideal.rep);
      const QuadInt& v = std::get<QuadInt>(x);
      if (h.a == 0) return v.a == 0 && v.b == 0;
      if (v.b % h.c != 0) return false;
      return (v.a - h.b * (v.b / h.c)) % h.a == 0;
    }
  }
  return false;
}

bool Domain::contains(const Ideal& outer, const Ideal& inner) const {
  for (const auto& e : basis(inner)) {
    if (!contains(outer, e)) return false;
  }
  return true;
}

Element Domain::reduce(const Ideal& modulus, const Element& x) const {
  if (is_zero_ideal(modulus)) throw PreconditionError("reduction modulo the zero ideal");
  switch (kind_) {
    case DomainKind::integers:
      return floor_mod(std::get<BigInt>(x), std::get<BigInt>(modulus.rep));
    case DomainKind::polynomials:
      return poly_divmod(std::get<Poly>(x), std::get<Poly>(modulus.rep)).second;
    case DomainKind::quadratic: {
      const Hnf& h = std::get<Hnf>(modulus.rep);
      const QuadInt& v = std::get<QuadInt>(x);
      BigInt k = floor_div(v.b, h.c);
      BigInt y = v.b - k * h.c;
      BigInt xx = floor_mod(v.a - k * h.b, h.a);
      return QuadInt{xx, y};
    }
  }
  return x;
}

BigInt Domain::residue_norm(const Ideal& x) const {
  if (is_zero_ideal(x)) throw PreconditionError("the zero ideal has infinite residue ring");
  switch (kind_) {
    case DomainKind::integers: {
      const BigInt& n = std::get<BigInt>(x.rep);
      return n < 0 ? BigInt(-n) : n;
    }
    case DomainKind::polynomials: {
      BigInt r = 1;
      for (int i = 0; i < std::get<Poly>(x.rep).degree(); ++i) r *= field_->order();
      return r;
    }
    case DomainKind::quadratic: {
      const Hnf& h = std::get<Hnf>(x.rep);
      return h.a * h.c;
    }
  }
  return 0;
}

std::pair<Element, Element> Domain::bezout(const Ideal& i, const Ideal& j) const {
  if (!is_unit_ideal(sum(i, j))) throw PreconditionError("ideals are not coprime");
  switch (kind_) {
    case DomainKind::integers: {
      const BigInt& a = std::get<BigInt>(i.rep);
      const BigInt& b = std::get<BigInt>(j.rep);
      ExtGcd e = ext_gcd(a, b);
      return {BigInt(e.s * a), BigInt(e.t * b)};
    }
    case DomainKind::polynomials: {
      const Poly& a = std::get<Poly>(i.rep);
      const Poly& b = std::get<Poly>(j.rep);
      auto [s, t] = poly_ext_gcd_coeffs(*this, a, b);
      return {poly_mul(s, a), poly_mul(t, b)};
    }
    case DomainKind::quadratic: {
      std::vector<Element> bi = basis(i), bj = basis(j);
      std::vector<Tracked> vs;
      std::size_t k = bi.size() + bj.size();
      for (std::size_t n = 0; n < k; ++n) {
        const QuadInt& q = std::get<QuadInt>(n < bi.size() ? bi[n] : bj[n - bi.size()]);
        Tracked t{q.a, q.b, std::vector<BigInt>(k, 0)};
        t.coeff[n] = 1;
        vs.push_back(std::move(t));
      }
      auto [zrow, top] = tracked_hnf(vs);
      // the unit lattice has zrow = (1, 0)
      Element u = zero();
      for (std::size_t n = 0; n < bi.size(); ++n) {
        u = add(u, mul(from_int(zrow.coeff[n]), bi[n]));
      }
      return {u, sub(one(), u)};
    }
  }
  return {zero(), one()};
}

PrimeFactorization Domain::factor_poly(const Poly& f_in, const BigInt& cap) const {
  Poly f = poly_monic(f_in);
  if (residue_norm(Ideal{f}) > cap) {
    throw CapExceeded("factoring cap exceeded by norm " + to_string(residue_norm(Ideal{f})));
  }
  PrimeFactorization out;
  const std::uint32_t q = field_->order();
  for (int d = 1; f.degree() > 0; ++d) {
    if (2 * d > f.degree()) {
      out.push_back({Ideal{f}, 1});
      break;
    }
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (std::uint64_t x = 0; x < count && 2 * d <= f.degree(); ++x) {
      Poly g;
      g.c.assign(d + 1, 0);
      std::uint64_t y = x;
      for (int i = 0; i < d; ++i) {
        g.c[i] = static_cast<std::uint32_t>(y % q);
        y /= q;
      }
      g.c[d] = 1;
      unsigned e = 0;
      while (true) {
        auto [quo, rem] = poly_divmod(f, g);
        if (!rem.c.empty()) break;
        f = quo;
        ++e;
      }
      if (e > 0) out.push_back({Ideal{g}, e});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  PrimeFactorization merged;
  for (auto& pp : out) {
    if (!merged.empty() && merged.back().prime == pp.prime) {
      merged.back().exponent += pp.exponent;
    } else {
      merged.push_back(pp);
    }
  }
  return merged;
}

PrimeFactorization Domain::factor_quadratic(const Hnf& h, const BigInt& cap) const {
  Ideal in{h};
  BigInt norm = residue_norm(in);
  if (norm > cap) throw CapExceeded("factoring cap exceeded by norm " + to_string(norm));
  const BigInt disc = c1_ == 1 ? BigInt(m_) : BigInt(4 * m_);
  PrimeFactorization out;
  for (const auto& [p, e] : factor_integer(norm, cap)) {
    (void)e;
    std::vector<Ideal> primes;
    int kr;
    if (p == 2) {
      BigInt r = floor_mod(disc, 8);
      kr = (r % 2 == 0) ? 0 : (r == 1 ? 1 : -1);
    } else {
      kr = legendre(disc, p);
    }
    if (kr == -1) {
      primes.push_back(principal(from_int(p)));
    } else {
      // roots of x^2 - c1 x - c0 modulo p
      std::vector<BigInt> roots;
      if (p < 2000) {
        for (BigInt r = 0; r < p; ++r) {
          if (floor_mod(r * r - c1_ * r - c0_, p) == 0) roots.push_back(r);
        }
      } else {
        BigInt s = sqrt_mod(c1_ * c1_ + 4 * c0_, p);
        BigInt inv2 = (p + 1) / 2;
        roots.push_back(floor_mod((c1_ + s) * inv2, p));
        BigInt r2 = floor_mod((c1_ - s) * inv2, p);
        if (r2 != roots[0]) roots.push_back(r2);
      }
      for (const auto& r : roots) {
        primes.push_back(ideal({from_int(p), sub(variable(), from_int(r))}));
      }
    }
    for (const auto& pr : primes) {
      unsigned k = 0;
      Ideal pk = pr;
      while (contains(pk, in)) {
        ++k;
        pk = product(pk, pr);
      }
      if (k > 0) out.push_back({pr, k});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

PrimeFactorization Domain::factor(const Ideal& x, const BigInt& cap) const {
  if (is_zero_ideal(x)) throw PreconditionError("cannot factor the zero ideal");
  PrimeFactorization out;
  switch (kind_) {
    case DomainKind::integers:
      for (const auto& [p, e] : factor_integer(std::get<BigInt>(x.rep), cap)) {
        out.push_back({Ideal{p}, e});
      }
      break;
    case DomainKind::polynomials:
      out = factor_poly(std::get<Poly>(x.rep), cap);
      break;
    case DomainKind::quadratic:
      out = factor_quadratic(std::get<Hnf>(x.rep), cap);
      break;
  }
  Ideal back = unit_ideal();
  for (const auto& pp : out) back = product(back, power(pp.prime, pp.exponent));
  if (!(back == x)) throw InternalError("factorization does not reconstruct " + format_ideal(x));
  return out;
}

Element Domain::crt_select(const PrimeFactorization& factors) const {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (factors[i].prime == factors[j].prime) {
        throw PreconditionError("duplicate prime " + format_ideal(factors[i].prime));
      }
    }
  }
  if (factors.empty()) return one();
  auto satisfies = [&](const Element& d) {
    for (const auto& pp : factors) {
      if (!contains(power(pp.prime, pp.exponent), d)) return false;
      if (contains(power(pp.prime, pp.exponent + 1), d)) return false;
    }
    return true;
  };
  // uniformizers: a basis element of p outside p^2, preferring one that
  // avoids every other listed prime
  std::vector<Element> pi;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Ideal& p = factors[i].prime;
    Ideal p2 = product(p, p);
    std::vector<Element> cands;
    for (const auto& b : basis(p)) {
      if (!contains(p2, b)) cands.push_back(b);
    }
    if (cands.empty()) throw InternalError("no uniformizer for " + format_ideal(p));
    Element pick = cands[0];
    for (const auto& c : cands) {
      bool clean = true;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        if (j != i && contains(factors[j].prime, c)) clean = false;
      }
      if (clean) {
        pick = c;
        break;
      }
    }
    pi.push_back(pick);
  }
  Ideal modulus = unit_ideal();
  std::vector<Ideal> local;
  for (const auto& pp : factors) {
    local.push_back(power(pp.prime, pp.exponent + 1));
    modulus = product(modulus, local.back());
  }
  Element d = one();
  for (std::size_t i = 0; i < factors.size(); ++i) d = mul(d, pow(pi[i], factors[i].exponent));
  d = reduce(modulus, d);
  if (satisfies(d)) return d;

  d = zero();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Ideal rest = unit_ideal();
    for (std::size_t j = 0; j < factors.size(); ++j) {
      if (j != i) rest = product(rest, local[j]);
    }
    Element e = bezout(local[i], rest).second;
    d = add(d, mul(pow(pi[i], factors[i].exponent), e));
  }
  d = reduce(modulus, d);
  if (!satisfies(d)) throw InternalError("CRT selection failed its postcondition");
  return d;
}

ConditionLReport Domain::condition_L(const Ideal& q, const BigInt& cap) const {
  ConditionLReport rep;
  if (is_zero_ideal(q)) throw PreconditionError("Condition L needs a nonzero ideal");
  Ideal s = sum(q, principal(from_int(2)));
  if (!is_unit_ideal(s)) {
    rep.holds = false;
    rep.failed_clause = "i";
    for (const auto& pp : factor(s, cap)) rep.witnesses.push_back(pp.prime);
    return rep;
  }
  for (const auto& pp : factor(q, cap)) {
    if (pp.exponent == 1 && residue_norm(pp.prime) == 3) rep.witnesses.push_back(pp.prime);
  }
  if (!rep.witnesses.empty()) {
    rep.holds = false;
    rep.failed_clause = "ii";
  }
  return rep;
}

std::string Domain::format_ideal(const Ideal& x) const {
  if (kind_ == DomainKind::quadratic) {
    const Hnf& h = std::get<Hnf>(x.rep);
    return "[[" + to_string(h.a) + "," + to_string(h.b) + "],[0," + to_string(h.c) + "]]";
  }
  return "(" + format(basis(x)[0]) + ")";
}

Ideal Domain::parse_ideal(const std::string& text_in) const {
  const std::string text = strip(text_in);
  if (text.empty()) throw ParseError("empty ideal");
  static const std::regex hnf_re(
      R"(\[\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*0\s*,\s*(-?\d+)\s*\]\])");
  std::smatch mt;
  if (std::regex_match(text, mt, hnf_re)) {
    if (kind_ != DomainKind::quadratic) throw ParseError("HNF ideals need a quadratic domain");
    Hnf h{parse_bigint(mt[1]), parse_bigint(mt[2]), parse_bigint(mt[3])};
    if (h.a <= 0 || h.c <= 0 || h.b < 0 || h.b >= h.a) {
      throw ParseError("'" + text + "' is not in Hermite normal form");
    }
    Ideal candidate = ideal({QuadInt{h.a, 0}, QuadInt{h.b, h.c}});
    if (!(candidate == Ideal{h})) {
      throw PreconditionError("lattice " + text + " is not closed under multiplication by w");
    }
    return candidate;
  }
  if (text == "D") return unit_ideal();
  if (text[0] != '(') return principal(parse_element(text));
  Ideal result = unit_ideal();
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '*')) ++pos;
    if (pos >= text.size()) break;
    if (text[pos] != '(') throw ParseError("expected '(' in ideal '" + text + "'");
    int depth = 0;
    std::size_t start = pos + 1;
    std::vector<std::string> gens;
    std::size_t i = pos;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (--depth == 0) break;
      } else if (c == ',' && depth == 1) {
        gens.push_back(text.substr(start, i - start));
        start = i + 1;
      }
    }
    if (i >= text.size()) throw ParseError("unbalanced parentheses in '" + text + "'");
    gens.push_back(text.substr(start, i - start));
    pos = i + 1;
    std::vector<Element> elems;
    for (const auto& g : gens) elems.push_back(parse_element(g));
    Ideal factor = ideal(elems);
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::size_t s = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (s == pos) throw ParseError("expected exponent in '" + text + "'");
      factor = power(factor, static_cast<unsigned>(std::stoul(text.substr(s, pos - s))));
    }
    result = product(result, factor);
  }
  return result;
}

}  // namespace conglab
