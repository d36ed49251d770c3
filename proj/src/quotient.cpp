#include "conglab/quotient.hpp"

#include <algorithm>
#include <random>

#include "conglab/errors.hpp"

namespace conglab {

namespace {
constexpr std::size_t kTableLimit = 1024;
}

RingPtr QuotientRing::build(const Domain& d, const Ideal& q, const Caps& caps) {
  if (d.is_zero_ideal(q)) throw PreconditionError("cannot form a quotient by the zero ideal");
  BigInt norm = d.residue_norm(q);
  if (norm > caps.ring) {
    throw CapExceeded("|D/q| = " + to_string(norm) + " exceeds the ring cap " +
                      std::to_string(caps.ring));
  }
  std::shared_ptr<QuotientRing> r(new QuotientRing(d, q));
  const std::size_t n = to_size(norm);
  r->factors_ = d.factor(q, caps.factor);
  r->lifts_.resize(n);
  switch (d.kind()) {
    case DomainKind::integers:
      for (std::size_t i = 0; i < n; ++i) r->lifts_[i] = BigInt(i);
      break;
    case DomainKind::polynomials: {
      const std::size_t deg = std::get<Poly>(q.rep).c.size() - 1;
      const std::size_t fq = d.field().order();
      for (std::size_t i = 0; i < n; ++i) {
        Poly p;
        std::size_t x = i;
        for (std::size_t k = 0; k < deg; ++k) {
          p.c.push_back(static_cast<std::uint32_t>(x % fq));
          x /= fq;
        }
        while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
        r->lifts_[i] = p;
      }
      break;
    }
    case DomainKind::quadratic: {
      const Hnf& h = std::get<Hnf>(q.rep);
      const std::size_t a = to_size(h.a);
      for (std::size_t i = 0; i < n; ++i) r->lifts_[i] = QuadInt{BigInt(i % a), BigInt(i / a)};
      break;
    }
  }
  r->one_ = r->reduce(d.one());
  r->neg_.resize(n);
  for (std::size_t i = 0; i < n; ++i) r->neg_[i] = r->reduce(d.neg(r->lifts_[i]));
  if (n <= kTableLimit) {
    r->add_.resize(n * n);
    r->mul_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        auto s = static_cast<std::uint16_t>(r->slow_add(i, j));
        auto m = static_cast<std::uint16_t>(r->slow_mul(i, j));
        r->add_[i * n + j] = r->add_[j * n + i] = s;
        r->mul_[i * n + j] = r->mul_[j * n + i] = m;
      }
    }
    r->tables_ = true;
  }
  r->inv_.assign(n, kNoInverse);
  if (r->tables_) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r->mul_[i * n + j] == r->one_) {
          r->inv_[i] = static_cast<Residue>(j);
          break;
        }
      }
    }
  } else {
    // x is a unit iff (x) + q = D; the inverse is x^(|R*|-1)
    std::vector<bool> unit(n, false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      unit[i] = d.is_unit_ideal(d.sum(d.principal(r->lifts_[i]), q));
      if (unit[i]) ++count;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!unit[i]) continue;
      Residue acc = r->one_, base = static_cast<Residue>(i);
      for (std::size_t e = count - 1; e > 0; e >>= 1) {
        if (e & 1) acc = r->mul(acc, base);
        base = r->mul(base, base);
      }
      r->inv_[i] = acc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (r->inv_[i] != kNoInverse) {
      r->units_.push_back(static_cast<Residue>(i));
      // the unit test must agree with the ideal-sum criterion
      if (n <= kTableLimit && !d.is_unit_ideal(d.sum(d.principal(r->lifts_[i]), q))) {
        throw InternalError("unit predicate disagrees with ideal sum");
      }
    }
  }
  for (const auto& u : d.units()) r->unit_image_.push_back(r->reduce(u));
  std::sort(r->unit_image_.begin(), r->unit_image_.end());
  r->unit_image_.erase(std::unique(r->unit_image_.begin(), r->unit_image_.end()),
                       r->unit_image_.end());
  for (Residue u : r->unit_image_) r->square_units_.push_back(r->mul(u, u));
  std::sort(r->square_units_.begin(), r->square_units_.end());
  r->square_units_.erase(std::unique(r->square_units_.begin(), r->square_units_.end()),
                         r->square_units_.end());
  switch (d.kind()) {
    case DomainKind::integers:
      r->additive_gens_ = {r->one_};
      break;
    case DomainKind::polynomials: {
      const int deg = std::get<Poly>(q.rep).degree();
      const FiniteField& f = d.field();
      std::uint32_t uj = 1;
      for (unsigned j = 0; j < f.degree(); ++j) {
        for (int i = 0; i < deg; ++i) {
          Poly p;
          p.c.assign(i + 1, 0);
          p.c[i] = uj;
          r->additive_gens_.push_back(r->reduce(p));
        }
        uj = f.mul(uj, f.generator() == 0 ? 1 : f.generator());
      }
      break;
    }
    case DomainKind::quadratic:
      r->additive_gens_ = {r->one_, r->reduce(d.variable())};
      break;
  }
  if (n == 1) r->additive_gens_ = {0};
  return r;
}

Residue QuotientRing::encode(const Element& x) const {
  switch (domain_.kind()) {
    case DomainKind::integers:
      return std::get<BigInt>(x).convert_to<Residue>();
    case DomainKind::polynomials: {
      const auto& p = std::get<Poly>(x);
      std::size_t v = 0;
      const std::size_t fq = domain_.field().order();
      for (std::size_t i = p.c.size(); i-- > 0;) v = v * fq + p.c[i];
      return static_cast<Residue>(v);
    }
    case DomainKind::quadratic: {
      const auto& q = std::get<QuadInt>(x);
      const Hnf& h = std::get<Hnf>(modulus_.rep);
      return (q.a + h.a * q.b).convert_to<Residue>();
    }
  }
  return 0;
}

Residue QuotientRing::reduce(const Element& x) const {
  return encode(domain_.reduce(modulus_, x));
}

Residue QuotientRing::slow_add(Residue x, Residue y) const {
  return reduce(domain_.add(lifts_[x], lifts_[y]));
}

Residue QuotientRing::slow_mul(Residue x, Residue y) const {
  return reduce(domain_.mul(lifts_[x], lifts_[y]));
}

Residue QuotientRing::inv(Residue x) const {
  if (!is_unit(x)) throw PreconditionError(format(x) + " is not a unit");
  return inv_[x];
}

bool AdditiveSubgroup::contains(Residue x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

bool AdditiveSubgroup::subset_of(const AdditiveSubgroup& o) const {
  return std::includes(o.elements.begin(), o.elements.end(), elements.begin(), elements.end());
}

AdditiveSubgroup additive_closure(const RingPtr& ring, const std::vector<Residue>& s) {
  const std::size_t n = ring->size();
  std::vector<char> in(n, 0);
  std::vector<Residue> elems{0};
  in[0] = 1;
  AdditiveSubgroup out;
  out.ring = ring;
  for (Residue g : s) {
    if (in[g]) continue;
    out.generators.push_back(g);
    // new group = union of cosets k*g + old group
    std::vector<Residue> old = elems;
    Residue shift = g;
    while (!in[shift]) {
      for (Residue e : old) {
        Residue v = ring->add(e, shift);
        if (!in[v]) {
          in[v] = 1;
          elems.push_back(v);
        }
      }
      shift = ring->add(shift, g);
    }
  }
  std::sort(elems.begin(), elems.end());
  out.elements = std::move(elems);
  return out;
}

AdditiveSubgroup ideal_image(const RingPtr& ring, const Ideal& a) {
  const Domain& d = ring->domain();
  std::vector<Residue> s;
  for (const auto& g : d.basis(a)) {
    Residue rg = ring->reduce(g);
    for (Residue h : ring->additive_generators()) s.push_back(ring->mul(rg, h));
  }
  return additive_closure(ring, s);
}

Ideal largest_ideal_inside(const AdditiveSubgroup& a) {
  const QuotientRing& r = *a.ring;
  std::vector<Residue> c;
  for (Residue x : a.elements) {
    bool ok = true;
    for (Residue g : r.additive_generators()) {
      if (!a.contains(r.mul(x, g))) {
        ok = false;
        break;
      }
    }
    if (ok) c.push_back(x);
  }
  AdditiveSubgroup cs = additive_closure(a.ring, c);
  if (cs.elements.size() != c.size()) throw InternalError("largest ideal is not closed");
  std::vector<Element> gens = r.domain().basis(r.modulus());
  for (Residue g : cs.generators) gens.push_back(r.lift(g));
  return r.domain().ideal(gens);
}

std::vector<LocalFactor> local_decompose(const RingPtr& ring, const Caps& caps) {
  const Domain& d = ring->domain();
  const std::size_t n = ring->size();
  std::vector<LocalFactor> out;
  std::vector<Ideal> powers;
  for (const auto& pp : ring->factorization()) powers.push_back(d.power(pp.prime, pp.exponent));
  for (std::size_t i = 0; i < powers.size(); ++i) {
    LocalFactor f;
    f.prime = ring->factorization()[i];
    f.ring = QuotientRing::build(d, powers[i], caps);
    f.projection.resize(n);
    for (std::size_t x = 0; x < n; ++x) f.projection[x] = f.ring->reduce(ring->lift(x));
    Ideal rest = d.unit_ideal();
    for (std::size_t j = 0; j < powers.size(); ++j) {
      if (j != i) rest = d.product(rest, powers[j]);
    }
    f.idempotent = powers.size() == 1 ? d.one() : d.bezout(powers[i], rest).second;
    out.push_back(std::move(f));
  }
  std::size_t prod = 1;
  for (const auto& f : out) prod *= f.ring->size();
  if (prod != n) throw InternalError("local factor sizes do not multiply to |R|");
  // section: x = sum of lift(x_i) * e_i
  auto section_ok = [&](std::size_t x) {
    Element acc = d.zero();
    for (const auto& f : out) {
      acc = d.add(acc, d.mul(f.ring->lift(f.projection[x]), f.idempotent));
    }
    return ring->reduce(acc) == x;
  };
  auto hom_ok = [&](Residue x, Residue y) {
    for (const auto& f : out) {
      if (f.projection[ring->add(x, y)] != f.ring->add(f.projection[x], f.projection[y]))
        return false;
      if (f.projection[ring->mul(x, y)] != f.ring->mul(f.projection[x], f.projection[y]))
        return false;
    }
    return true;
  };
  std::mt19937_64 rng(0x5eed);
  const std::size_t samples = n <= 4096 ? n : 1000;
  for (std::size_t k = 0; k < samples; ++k) {
    std::size_t x = n <= 4096 ? k : rng() % n;
    if (!section_ok(x)) throw InternalError("CRT section is not inverse to the projection");
  }
  for (std::size_t k = 0; k < 1000; ++k) {
    if (!hom_ok(rng() % n, rng() % n)) throw InternalError("projection is not a ring map");
  }
  return out;
}

}  // namespace conglab
