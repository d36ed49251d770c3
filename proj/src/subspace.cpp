#include "conglab/subspace.hpp"

#include <regex>
#include <set>

#include "conglab/errors.hpp"

namespace conglab {

TranslationSubspace::Vec TranslationSubspace::to_vec(const Poly& x) const {
  Poly r = domain_.poly_divmod(x, f_).second;
  Vec v(ambient_dimension(), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) v[i] = r.c[i];
  return v;
}

Poly TranslationSubspace::to_poly(const Vec& v) const {
  Poly p{v};
  while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
  return p;
}

bool TranslationSubspace::eliminate(Vec& v) const {
  const FiniteField& k = domain_.field();
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint32_t s = v[pivots_[r]];
    if (s == 0) continue;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = k.sub(v[i], k.mul(s, rows_[r][i]));
  }
  for (std::uint32_t x : v) {
    if (x != 0) return false;
  }
  return true;
}

void TranslationSubspace::insert(Vec v) {
  if (eliminate(v)) return;
  const FiniteField& k = domain_.field();
  std::size_t p = 0;
  while (v[p] == 0) ++p;
  std::uint32_t s = k.inv(v[p]);
  for (auto& x : v) x = k.mul(s, x);
  for (auto& row : rows_) {
    std::uint32_t c = row[p];
    if (c == 0) continue;
    for (std::size_t i = 0; i < v.size(); ++i) row[i] = k.sub(row[i], k.mul(c, v[i]));
  }
  std::size_t at = 0;
  while (at < pivots_.size() && pivots_[at] < p) ++at;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), p);
}

TranslationSubspace TranslationSubspace::span(const Domain& d, const Poly& f,
                                              const std::vector<Poly>& gens) {
  if (d.kind() != DomainKind::polynomials) throw PreconditionError("subspaces live in k[t]");
  if (f.degree() < 1) throw PreconditionError("modulus must have positive degree");
  TranslationSubspace q(d, f);
  for (const Poly& g : gens) q.insert(q.to_vec(g));
  return q;
}

TranslationSubspace TranslationSubspace::from_elements(const Domain& d, const Poly& f,
                                                       const std::vector<Poly>& elements) {
  TranslationSubspace q = span(d, f, elements);
  std::set<Vec> given;
  for (const Poly& x : elements) given.insert(q.to_vec(x));
  BigInt expected = 1;
  for (std::size_t i = 0; i < q.dimension(); ++i) expected *= d.field().order();
  if (BigInt(given.size()) != expected) {
    throw PreconditionError("element set is not k-linear: " + std::to_string(given.size()) +
                            " residues listed, span has " + to_string(expected));
  }
  return q;
}

bool TranslationSubspace::contains(const Poly& x) const {
  Vec v = to_vec(x);
  return eliminate(v);
}

std::vector<Poly> TranslationSubspace::basis() const {
  std::vector<Poly> out;
  for (const auto& r : rows_) out.push_back(to_poly(r));
  return out;
}

namespace {

/// Monic divisors of f.
std::vector<Poly> divisors(const Domain& d, const Poly& f, const Caps& caps) {
  std::vector<Poly> out{d.poly_monic(Poly{{1}})};
  for (const PrimePower& pp : d.factor(d.principal(f), caps.factor)) {
    const Poly& p = std::get<Poly>(pp.prime.rep);
    std::vector<Poly> next;
    for (const Poly& x : out) {
      Poly y = x;
      for (unsigned e = 0; e <= pp.exponent; ++e) {
        next.push_back(y);
        y = d.poly_mul(y, p);
      }
    }
    out = std::move(next);
  }
  return out;
}

bool ideal_inside(const TranslationSubspace& q, const Poly& h) {
  const Domain& d = q.domain();
  int n = q.modulus().degree() - h.degree();
  Poly x = h;
  Poly t{{0, 1}};
  for (int i = 0; i < n; ++i) {
    if (!q.contains(x)) return false;
    x = d.poly_mul(x, t);
  }
  return true;
}

std::optional<std::pair<Poly, Poly>> square_violation(const TranslationSubspace& q,
                                                      const Poly& alpha) {
  const Domain& d = q.domain();
  Poly a2 = d.poly_mul(alpha, alpha);
  for (const Poly& v : q.basis()) {
    Poly w = d.poly_divmod(d.poly_mul(a2, v), q.modulus()).second;
    if (!q.contains(w)) return std::make_pair(v, w);
  }
  return std::nullopt;
}

}  // namespace

SubspaceScreen screen_translation_subspace(const TranslationSubspace& q, const Caps& caps) {
  const Domain& d = q.domain();
  Poly f = d.poly_monic(q.modulus());
  SubspaceScreen s;
  Poly lvl = f;
  for (const Poly& h : divisors(d, f, caps)) {
    if (ideal_inside(q, h)) lvl = d.poly_gcd(lvl, h);
  }
  s.level = d.principal(lvl);
  s.ql_codim = q.ambient_dimension() - q.dimension();
  Poly t{{0, 1}};
  if (d.poly_gcd(t, lvl).degree() == 0) {
    if (auto v = square_violation(q, t)) {
      s.congruence_possible = false;
      s.alpha = t;
      s.witness = v->first;
      s.image = v->second;
    }
  }
  return s;
}

TranslationSubspace theorem_4_12_subspace(const Domain& d, const Poly& f) {
  if (f.degree() < 2) throw PreconditionError("deg f must be at least 2");
  if (f.c[0] == 0) throw PreconditionError("f(0) must be nonzero");
  if (f.degree() == 2 && f.c[1] == 0) throw PreconditionError("f'(0) must be nonzero");
  std::vector<Poly> gens;
  for (int i = 1; i < f.degree(); ++i) {
    Poly x;
    x.c.assign(static_cast<std::size_t>(i) + 1, 0);
    x.c.back() = 1;
    gens.push_back(x);
  }
  return TranslationSubspace::span(d, f, gens);
}

TranslationSubspace parse_subspace(const nlohmann::json& j) {
  try {
    std::string k = j.at("k").is_number() ? std::to_string(j.at("k").get<long long>())
                                          : j.at("k").get<std::string>();
    static const std::regex field_re(R"(\s*F?_?(\d+(\^\d+)?)\s*)");
    std::smatch m;
    if (!std::regex_match(k, m, field_re)) throw ParseError("bad field '" + k + "'");
    std::string desc = "Fq[t] q=" + m[1].str();
    if (j.contains("mod")) desc += " mod=" + j.at("mod").get<std::string>();
    Domain d = Domain::parse(desc);
    auto poly = [&](const nlohmann::json& x) {
      return std::get<Poly>(d.parse_element(x.get<std::string>()));
    };
    Poly f = poly(j.at("f"));
    std::vector<Poly> xs;
    bool listed = j.contains("elements");
    if (listed == j.contains("basis")) throw ParseError("give exactly one of basis, elements");
    for (const auto& x : j.at(listed ? "elements" : "basis")) xs.push_back(poly(x));
    return listed ? TranslationSubspace::from_elements(d, f, xs)
                  : TranslationSubspace::span(d, f, xs);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("subspace json: ") + e.what());
  }
}

}  // namespace conglab
