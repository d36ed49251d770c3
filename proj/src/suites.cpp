#include "conglab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <thread>
#include <unordered_set>

#include "conglab/analyzer.hpp"
#include "conglab/errors.hpp"
#include "conglab/examples.hpp"
#include "conglab/matgroup.hpp"
#include "conglab/modular.hpp"
#include "conglab/subgroup_lattice.hpp"
#include "conglab/subspace.hpp"

namespace conglab {

void SuiteResult::check(bool ok, const std::string& what) {
  ++checked;
  if (ok) {
    ++passed;
  } else if (failures.size() < 8) {
    failures.push_back(what);
  }
}

Family parse_family(const std::string& text) {
  static const std::regex z_re(R"(\s*Z/\(?(\d+)\)?\s*)");
  static const std::regex poly_re(R"(\s*F(\d+(?:\^\d+)?)\[t\]/(.+))");
  static const std::regex quad_re(R"(\s*(Q\(sqrt\(-?\d+\)\))/(.+))");
  std::smatch m;
  if (std::regex_match(text, m, z_re)) {
    Domain d = Domain::integers();
    return {d, d.parse_ideal("(" + m[1].str() + ")"), text};
  }
  if (std::regex_match(text, m, poly_re)) {
    Domain d = Domain::parse("Fq[t] q=" + m[1].str());
    return {d, d.parse_ideal(m[2].str()), text};
  }
  if (std::regex_match(text, m, quad_re)) {
    Domain d = Domain::parse(m[1].str());
    return {d, d.parse_ideal(m[2].str()), text};
  }
  throw ParseError("bad family '" + text + "'");
}

std::vector<std::string> default_families() {
  return {"Z/4", "Z/6", "Z/8", "Z/9", "Z/12", "F3[t]/(t^2)"};
}

namespace {

using Rng = std::mt19937_64;

long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

Element random_element(const Domain& d, Rng& rng) {
  switch (d.kind()) {
    case DomainKind::integers:
      return BigInt(uniform(rng, 1, 60));
    case DomainKind::polynomials: {
      Poly p;
      long long deg = uniform(rng, 0, 3);
      for (long long i = 0; i <= deg; ++i) {
        p.c.push_back(static_cast<std::uint32_t>(uniform(rng, 0, d.field().order() - 1)));
      }
      if (p.c.back() == 0) p.c.back() = 1;
      return p;
    }
    case DomainKind::quadratic: {
      QuadInt x{uniform(rng, -8, 8), uniform(rng, -8, 8)};
      if (x.a == 0 && x.b == 0) x.a = 1;
      return x;
    }
  }
  throw InternalError("unknown domain kind");
}

Ideal random_ideal(const Domain& d, Rng& rng) {
  std::vector<Element> gens{random_element(d, rng)};
  if (uniform(rng, 0, 1) == 1) gens.push_back(random_element(d, rng));
  return d.ideal(gens);
}

/// Ideals containing q, from its factorization.
std::vector<Ideal> divisors(const Domain& d, const Ideal& q, const Caps& caps) {
  std::vector<Ideal> out{d.unit_ideal()};
  for (const PrimePower& pp : d.factor(q, caps.factor)) {
    std::vector<Ideal> next;
    for (const Ideal& x : out) {
      Ideal y = x;
      for (unsigned e = 0; e <= pp.exponent; ++e) {
        next.push_back(y);
        y = d.product(y, pp.prime);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MatCode random_element_of(const FinMatGroup& g, Rng& rng) {
  return g.elements()[static_cast<std::size_t>(uniform(rng, 0, g.order() - 1))];
}

FinMatGroup random_subgroup(const FinMatGroup& g, Rng& rng, const Caps& caps) {
  std::vector<MatCode> gens{random_element_of(g, rng)};
  if (uniform(rng, 0, 2) > 0) gens.push_back(random_element_of(g, rng));
  if (uniform(rng, 0, 1) == 1) gens.push_back(g.ops().minus_identity());
  return FinMatGroup::closure(g.ring(), gens, caps.group);
}

// --- domains ----------------------------------------------------------------

SuiteResult suite_domains(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "domains";
  Rng rng(o.seed);
  for (const char* desc : {"Z", "Fq[t] q=3", "Fq[t] q=2", "Fq[t] q=4", "Q(sqrt(-5))",
                           "Q(sqrt(-1))", "Q(sqrt(-2))"}) {
    Domain d = Domain::parse(desc);
    Ideal six = d.principal(d.from_int(6));
    for (int trial = 0; trial < 25; ++trial) {
      Ideal i = random_ideal(d, rng), j = random_ideal(d, rng), k = random_ideal(d, rng);
      std::string at = std::string(desc) + " I=" + d.format_ideal(i) + " J=" + d.format_ideal(j);
      Ideal ij = d.product(i, j), cap = d.intersect(i, j), cup = d.sum(i, j);
      r.check(cup == d.sum(j, i) && ij == d.product(j, i), "commutativity " + at);
      r.check(d.sum(d.sum(i, j), k) == d.sum(i, d.sum(j, k)), "sum associativity " + at);
      r.check(d.product(ij, k) == d.product(i, d.product(j, k)), "product associativity " + at);
      r.check(d.contains(cap, ij) && d.contains(i, cap) && d.contains(cup, i), "chain " + at);
      r.check(d.product(cup, cap) == ij, "(I+J)(I n J) = IJ " + at);
      r.check(d.sum(i, i) == i && d.intersect(i, i) == i, "idempotence " + at);
      Ideal back = d.unit_ideal();
      for (const PrimePower& pp : d.factor(i, o.caps.factor)) {
        back = d.product(back, d.power(pp.prime, pp.exponent));
      }
      r.check(back == i, "factor round trip " + at);
      if (d.is_unit_ideal(cup)) {
        r.check(d.residue_norm(ij) == d.residue_norm(i) * d.residue_norm(j),
                "norm multiplicativity " + at);
      }
      if (d.is_unit_ideal(d.sum(i, six))) {
        r.check(d.condition_L(i, o.caps.factor).holds, "Condition L for q + (6) = D " + at);
      }
    }
  }
  return r;
}

// --- quotients --------------------------------------------------------------

SuiteResult suite_quotients(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "quotients";
  Rng rng(o.seed);
  for (const char* text : {"Z/12", "Z/25", "F3[t]/(t^2+t)", "F2[t]/(t^3)", "F9[t]/(t)",
                           "Q(sqrt(-5))/(6)", "Q(sqrt(-1))/(4)", "Q(sqrt(-2))/(w)^4"}) {
    Family fam = parse_family(text);
    const Domain& d = fam.domain;
    RingPtr ring = QuotientRing::build(d, fam.modulus, o.caps);
    r.check(BigInt(ring->size()) == d.residue_norm(fam.modulus), std::string("|R| ") + text);
    std::vector<Ideal> divs = divisors(d, fam.modulus, o.caps);
    for (const Ideal& a : divs) {
      r.check(largest_ideal_inside(ideal_image(ring, a)) == a,
              std::string("fixed point ") + text + " " + d.format_ideal(a));
    }
    std::size_t product = 1;
    for (const LocalFactor& lf : local_decompose(ring, o.caps)) product *= lf.ring->size();
    r.check(product == ring->size(), std::string("local sizes ") + text);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<Residue> s;
      for (long long k = uniform(rng, 0, 2); k >= 0; --k) {
        s.push_back(static_cast<Residue>(uniform(rng, 0, ring->size() - 1)));
      }
      AdditiveSubgroup a = additive_closure(ring, s);
      Ideal l = largest_ideal_inside(a);
      std::string at = std::string(text) + " trial " + std::to_string(trial);
      r.check(ideal_image(ring, l).subset_of(a), "largest ideal inside A " + at);
      bool maximal = true;
      for (const Ideal& b : divs) {
        if (ideal_image(ring, b).subset_of(a) && !d.contains(l, b)) maximal = false;
      }
      r.check(maximal, "maximality " + at);
      // exponent of R/A
      long long e = 1;
      auto killed = [&](long long k) {
        for (Residue g : ring->additive_generators()) {
          Residue x = 0;
          for (long long i = 0; i < k; ++i) x = ring->add(x, g);
          if (!a.contains(x)) return false;
        }
        return true;
      };
      while (!killed(e)) ++e;
      Ideal ee = d.sum(d.principal(d.from_int(e)), fam.modulus);
      r.check(d.contains(l, ee), "ideal generated by the exponent " + at);
    }
  }
  return r;
}

// --- matgroups --------------------------------------------------------------

SuiteResult suite_matgroups(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "matgroups";
  Rng rng(o.seed);
  for (const char* text : {"Z/6", "Z/8", "F3[t]/(t^2)", "Q(sqrt(-1))/(3)", "F2[t]/(t^2+t)"}) {
    Family fam = parse_family(text);
    RingPtr ring = QuotientRing::build(fam.domain, fam.modulus, o.caps);
    FinMatGroup g = full_sl2(ring, o.caps);
    r.check(BigInt(g.order()) == sl2_order(*ring), std::string("|SL2| ") + text);
    SL2 ops(ring);
    for (int trial = 0; trial < 8; ++trial) {
      FinMatGroup h = random_subgroup(g, rng, o.caps);
      std::string at = std::string(text) + " |H|=" + std::to_string(h.order());
      r.check(g.order() % h.order() == 0, "Lagrange " + at);
      FinMatGroup core = core_of(h, g);
      r.check(core.subgroup_of(h) && core.is_normal_in(g), "core normal and inside H " + at);
      if (h.is_normal_in(g)) r.check(core == h, "normal H is its own core " + at);
      FinMatGroup meet = h;
      for (MatCode x : right_coset_reps(g, h)) meet = intersect(meet, conjugate(h, x));
      r.check(meet == core, "core equals the intersection of conjugates " + at);
      auto [borel, unip] = borel_and_unipotent(ring);
      std::size_t total = 0;
      for (const DoubleCoset& dc : double_cosets(g, h, borel)) total += dc.size;
      r.check(total == g.order(), "double cosets cover G " + at);
    }
    std::vector<Ideal> divs = divisors(fam.domain, fam.modulus, o.caps);
    for (const Ideal& a : divs) {
      for (const Ideal& b : divs) {
        if (fam.domain.is_unit_ideal(a)) continue;
        std::vector<MatCode> gens;
        for (Residue x : ideal_image(ring, a).generators) {
          gens.push_back(ops.T(x));
          gens.push_back(ops.S(x));
        }
        FinMatGroup gb = principal_congruence_image(ring, b, o.caps);
        for (MatCode x : gb.generators()) gens.push_back(x);
        // E2(D, a) is normal in SL2(D), so close under conjugation too.
        FinMatGroup e = normal_closure(gens, g, o.caps);
        FinMatGroup target =
            principal_congruence_image(ring, fam.domain.sum(a, b), o.caps);
        r.check(e == target, std::string("E2(a) G(b) = G(a+b) ") + text + " a=" +
                                 fam.domain.format_ideal(a) + " b=" +
                                 fam.domain.format_ideal(b));
      }
    }
  }
  return r;
}

// --- structural lemmas ------------------------------------------------------

SuiteResult suite_lemma1_1(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "lemma1_1";
  struct Pair {
    const char* domain;
    const char* q;
    const char* q2;
  };
  for (Pair p : {Pair{"Z", "(2)", "(4)"}, Pair{"Z", "(3)", "(9)"}, Pair{"Z", "(4)", "(8)"},
                 Pair{"Z", "(6)", "(36)"}, Pair{"Fq[t] q=3", "(t)", "(t^2)"},
                 Pair{"Fq[t] q=2", "(t^2+t)", "(t^2+t)^2"}, Pair{"Q(sqrt(-2))", "(w)^2", "(w)^4"},
                 Pair{"Q(sqrt(-1))", "(1+w)", "(2)"}}) {
    Domain d = Domain::parse(p.domain);
    Lemma11Result res = lemma_1_1_verify(d, d.parse_ideal(p.q), d.parse_ideal(p.q2), o.caps);
    r.check(res.holds, std::string(p.domain) + " " + p.q + " " + p.q2 + ": order " +
                           std::to_string(res.quotient_order) + " expected " +
                           std::to_string(res.expected_order));
  }
  return r;
}

SuiteResult suite_lemma4_5(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "lemma4_5";
  for (const char* text : {"Z/5", "Z/9", "Z/25", "F3[t]/(t^2+1)", "F3[t]/(t^2)"}) {
    Family fam = parse_family(text);
    RingPtr ring = QuotientRing::build(fam.domain, fam.modulus, o.caps);
    r.check(psl2_center_check(ring, o.caps), std::string("center of SL2 is {I, -I} in ") + text);
  }
  return r;
}

SuiteResult suite_lemma2_6(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "lemma2_6";
  Rng rng(o.seed);
  struct Pool {
    Domain d;
    std::vector<Ideal> primes;
  };
  std::vector<Pool> pools;
  for (const char* desc : {"Z", "Fq[t] q=3", "Fq[t] q=2", "Q(sqrt(-5))", "Q(sqrt(-1))"}) {
    Pool pool{Domain::parse(desc), {}};
    const Domain& d = pool.d;
    std::vector<Element> seeds;
    if (d.kind() == DomainKind::polynomials) {
      for (const char* f : {"t", "t+1", "t^2+1", "t^2+t+2", "t^3+2*t+1", "t^2+t+1"}) {
        seeds.push_back(d.parse_element(f));
      }
    } else {
      for (int p : {2, 3, 5, 7, 11}) seeds.push_back(d.from_int(p));
    }
    for (const Element& s : seeds) {
      for (const PrimePower& pp : d.factor(d.principal(s), o.caps.factor)) {
        if (std::find(pool.primes.begin(), pool.primes.end(), pp.prime) == pool.primes.end()) {
          pool.primes.push_back(pp.prime);
        }
      }
    }
    pools.push_back(std::move(pool));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Pool& pool = pools[static_cast<std::size_t>(trial) % pools.size()];
    const Domain& d = pool.d;
    std::vector<Ideal> ps = pool.primes;
    std::shuffle(ps.begin(), ps.end(), rng);
    ps.resize(static_cast<std::size_t>(uniform(rng, 1, std::min<long long>(3, ps.size()))));
    PrimeFactorization f;
    for (const Ideal& p : ps) f.push_back({p, static_cast<unsigned>(uniform(rng, 0, 3))});
    Element x = d.crt_select(f);
    bool ok = true;
    std::string at = d.describe() + ":";
    for (const PrimePower& pp : f) {
      at += " " + d.format_ideal(pp.prime) + "^" + std::to_string(pp.exponent);
      ok = ok && d.contains(d.power(pp.prime, pp.exponent), x) &&
           !d.contains(d.power(pp.prime, pp.exponent + 1), x);
    }
    r.check(ok, "crt_select " + at + " -> " + d.format(x));
  }
  return r;
}

SuiteResult suite_cor1_3(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "cor1_3";
  for (const char* text : {"Z/30", "F3[t]/(t^2+t)"}) {
    Family fam = parse_family(text);
    const Domain& d = fam.domain;
    RingPtr ring = QuotientRing::build(d, fam.modulus, o.caps);
    FinMatGroup g = full_sl2(ring, o.caps);
    SL2 ops(ring);
    std::vector<Ideal> divs = divisors(d, fam.modulus, o.caps);
    for (std::size_t i = 0; i < divs.size(); ++i) {
      for (std::size_t j = i + 1; j < divs.size(); ++j) {
        const Ideal &a = divs[i], &b = divs[j];
        if (d.is_unit_ideal(a) || d.is_unit_ideal(b) || !d.is_unit_ideal(d.sum(a, b))) continue;
        FinMatGroup ga = principal_congruence_image(ring, a, o.caps);
        FinMatGroup gb = principal_congruence_image(ring, b, o.caps);
        std::unordered_set<MatCode> prod;
        for (MatCode x : ga.elements()) {
          for (MatCode y : gb.elements()) prod.insert(ops.mul(x, y));
        }
        r.check(prod.size() == g.order(), std::string("G(a)G(b) = G in ") + text + " a=" +
                                              d.format_ideal(a) + " b=" + d.format_ideal(b));
      }
    }
  }
  return r;
}

// --- theorems over exhaustive families --------------------------------------

std::vector<std::string> families(const SuiteOptions& o) {
  return o.exhaustive ? std::vector<std::string>{*o.exhaustive} : default_families();
}

SuiteResult suite_theoremA(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "theoremA";
  for (const std::string& text : families(o)) {
    Family fam = parse_family(text);
    ContextPtr ctx = make_context(fam.domain, fam.modulus, o.caps);
    for (const SubgroupClass& cl : subgroup_classes(ctx->full)) {
      Frame f = frame_subgroup(ctx, cl.rep);
      Verdict v = theorem_A_check(f, cusps(f));
      r.check(v.status == "pass", text + " |H|=" + std::to_string(cl.rep.order()) + ": " +
                                      v.detail);
    }
  }
  return r;
}

SuiteResult suite_theoremBC(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "theoremBC";
  for (const std::string& text : families(o)) {
    Family fam = parse_family(text);
    ContextPtr ctx = make_context(fam.domain, fam.modulus, o.caps);
    for (const SubgroupClass& cl : subgroup_classes(ctx->full)) {
      Frame f = frame_subgroup(ctx, cl.rep);
      AdditiveSubgroup ql = quasi_level(f);
      Ideal l = largest_ideal_inside(ql);
      Verdict b = theorem_B_check(f, l, ql);
      Verdict c = theorem_C_check(f, l);
      std::string at = text + " |H|=" + std::to_string(cl.rep.order()) + ": ";
      r.check(!b.violation(), at + b.detail);
      r.check(!c.violation(), at + c.detail);
    }
  }
  return r;
}

// --- analyzer properties ----------------------------------------------------

SuiteResult suite_analyzer(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "analyzer";
  Rng rng(o.seed);
  for (const char* text : {"Z/6", "Z/8", "F3[t]/(t^2)", "Q(sqrt(-1))/(3)", "F2[t]/(t^2)",
                           "Q(sqrt(-2))/(2)"}) {
    Family fam = parse_family(text);
    const Domain& d = fam.domain;
    ContextPtr ctx = make_context(d, fam.modulus, o.caps);
    const FinMatGroup& g = ctx->full;
    for (const SubgroupClass& cl : subgroup_classes(g)) {
      Frame f = frame_subgroup(ctx, cl.rep);
      std::string at = std::string(text) + " |H|=" + std::to_string(cl.rep.order()) + ": ";
      AnalysisReport rep = analyze(f);
      r.check(!rep.has_violation(), at + "analyzer verdicts");
      Ideal all = d.unit_ideal();
      for (MatCode x : g.elements()) all = d.intersect(all, amplitude_at(f, x));
      r.check(all == rep.level, at + "level is the intersection over all of G");
      r.check(ideal_image(ctx->ring, rep.level).subset_of(rep.quasi_level) &&
                  rep.quasi_level.subset_of(ideal_image(ctx->ring, rep.order_ideal)),
              at + "l in ql in o");
      for (int k = 0; k < 3; ++k) {
        MatCode kk = random_element_of(g, rng), gg = random_element_of(g, rng);
        Frame fk = frame_subgroup(ctx, conjugate(f.image, kk));
        SL2 ops(ctx->ring);
        r.check(amplitude_at(fk, ops.mul(ops.inv(kk), gg)) == amplitude_at(f, gg),
                at + "conjugation invariance");
      }
      const CuspData& c1 = rep.cusps[static_cast<std::size_t>(uniform(rng, 0, rep.cusps.size() - 1))];
      const CuspData& c2 = rep.cusps[static_cast<std::size_t>(uniform(rng, 0, rep.cusps.size() - 1))];
      MatCode g0 = theorem_2_7_search(f, rep.cusps, c1.rep, c2.rep, c1.amplitude, c2.amplitude);
      r.check(d.contains(amplitude_at(f, g0), d.sum(c1.amplitude, c2.amplitude)),
              at + "Theorem 2.7 witness");
    }
  }
  // Coprime splittings of the level.
  struct Split {
    const char* family;
    const char* q1;
    const char* q2;
  };
  for (Split s : {Split{"Z/6", "(2)", "(3)"}, Split{"Z/6", "(3)", "(2)"},
                  Split{"Z/10", "(2)", "(5)"}, Split{"F3[t]/(t^2+t)", "(t)", "(t+1)"},
                  Split{"F3[t]/(t^2+t)", "(t+1)", "(t)"}}) {
    Family fam = parse_family(s.family);
    const Domain& d = fam.domain;
    ContextPtr ctx = make_context(d, fam.modulus, o.caps);
    Ideal q1 = d.parse_ideal(s.q1), q2 = d.parse_ideal(s.q2);
    FinMatGroup g1 = principal_congruence_image(ctx->ring, q1, o.caps);
    FinMatGroup g2 = principal_congruence_image(ctx->ring, q2, o.caps);
    SL2 ops(ctx->ring);
    for (const SubgroupClass& cl : subgroup_classes(ctx->full)) {
      Frame f = frame_subgroup(ctx, cl.rep);
      if (level(f) != fam.modulus) continue;
      std::string at = std::string(s.family) + " q1=" + s.q1 + " |H|=" +
                       std::to_string(cl.rep.order()) + ": ";
      std::vector<MatCode> gens = intersect(f.image, g1).elements();
      for (MatCode x : g2.generators()) gens.push_back(x);
      FinMatGroup h0 = FinMatGroup::closure(ctx->ring, gens, o.caps.group);
      r.check(level(frame_subgroup(ctx, h0)) == q2, at + "Lemma 4.3 level");
      if (!f.normal) continue;
      std::vector<MatCode> nbar_gens = f.image.generators();
      for (MatCode x : g2.generators()) nbar_gens.push_back(x);
      FinMatGroup nbar = FinMatGroup::closure(ctx->ring, nbar_gens, o.caps.group);
      bool central = true;
      for (MatCode x : ctx->full.generators()) {
        for (MatCode y : nbar.generators()) {
          MatCode comm = ops.mul(ops.mul(ops.inv(x), ops.inv(y)), ops.mul(x, y));
          if (!h0.contains(comm)) central = false;
        }
      }
      r.check(central, at + "Lemma 4.4 centrality");
    }
  }
  // Theorem 2.7 on sampled subgroups of SL2(Z/30).
  {
    Family fam = parse_family("Z/30");
    ContextPtr ctx = make_context(fam.domain, fam.modulus, o.caps);
    for (int trial = 0; trial < 12; ++trial) {
      Frame f = frame_subgroup(ctx, random_subgroup(ctx->full, rng, o.caps));
      std::vector<CuspData> cs = cusps(f);
      for (int k = 0; k < 4; ++k) {
        const CuspData& a = cs[static_cast<std::size_t>(uniform(rng, 0, cs.size() - 1))];
        const CuspData& b = cs[static_cast<std::size_t>(uniform(rng, 0, cs.size() - 1))];
        MatCode g0 = theorem_2_7_search(f, cs, a.rep, b.rep, a.amplitude, b.amplitude);
        r.check(fam.domain.contains(amplitude_at(f, g0), fam.domain.sum(a.amplitude, b.amplitude)),
                "Z/30 Theorem 2.7 witness, |H|=" + std::to_string(f.image.order()));
      }
    }
  }
  return r;
}

// --- examples, modular, subspace --------------------------------------------

SuiteResult suite_examples(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "examples";
  auto get = [&](const std::string& name) {
    Example e = build_example(name, o.caps);
    return std::make_pair(e, analyze(e.frame));
  };
  {
    auto [e, rep] = get("ex2_13");
    const Domain& d = e.frame.ctx->domain;
    r.check(rep.index == 4 && rep.cusps.size() == 2 &&
                rep.amplitudes == std::vector<Ideal>{d.unit_ideal(), d.parse_ideal("(t)")},
            "ex2_13 index 4, A = {D, (t)}");
  }
  {
    auto [e, rep] = get("ex3_2");
    r.check(rep.index == 6 && rep.cusps.size() == 1 && rep.cusps[0].m == 2 &&
                rep.cusps[0].quasi_amplitude.index_in_ring() == 3 &&
                rep.theorem_B.status == "pass" && e.facts["b_zeta_differs"] == true,
            "ex3_2 one cusp, m = 2, |D:b| = 3, Theorem B");
  }
  {
    auto [e, rep] = get("ex3_5");
    r.check(rep.cusps.size() == 2 && rep.amplitudes.size() == 1 &&
                e.facts["has_minimum"] == false && e.facts["has_maximum"] == false &&
                rep.theorem_A.status == "pass",
            "ex3_5 two cusps, no extreme quasi-amplitude");
  }
  {
    auto [e, rep] = get("ex4_9");
    const Domain& d = e.frame.ctx->domain;
    r.check(rep.normal && rep.level == d.power(d.parse_ideal("(w)"), 4) &&
                !(rep.quasi_level == ideal_image(e.frame.ctx->ring, rep.level)) &&
                rep.condition_L.failed_clause == "i",
            "ex4_9 normal, l = p^4, ql != l");
  }
  {
    auto [e, rep] = get("ex4_10");
    const Domain& d = e.frame.ctx->domain;
    r.check(rep.normal && rep.index == 3 && rep.level == d.parse_ideal("(t^2+t)") &&
                rep.quasi_level.contains(e.frame.ctx->ring->one()) && e.facts["G_over_N"] == 9 &&
                e.facts["N_over_Gq"] == 64,
            "ex4_10 normal, index 3, level (t^2+t), 1 in ql");
  }
  {
    auto [e, rep] = get("ex5_4");
    const Domain& d = e.frame.ctx->domain;
    r.check(rep.normal && rep.index == 2 && d.residue_norm(rep.level) == 4 &&
                rep.quasi_level.index_in_ring() == 2 && rep.theorem_C.status == "not_applicable",
            "ex5_4 normal, index 2, |D/l| = 4");
  }
  return r;
}

SuiteResult suite_modular(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "modular";
  for (const PermRep& p : low_index_enumerate(std::min<std::size_t>(8, o.caps.index), o.caps)) {
    CuspSplit c = cusp_split(p);
    std::string at = "index " + std::to_string(p.degree()) + " level " +
                     std::to_string(c.level) + ": ";
    std::size_t sum = 0;
    for (std::size_t w : c.widths) sum += w;
    r.check(sum == p.degree(), at + "widths sum to the index");
    ExactResult ex = exact_congruence_test(p, 1, o.caps);
    if (ex.congruence) {
      IndexLevelResult il = index_level_checks(p, c, o.caps);
      r.check(larcher_check(c).pass() && il.star && il.star_star, at + "screens are necessary");
    }
    for (std::size_t m : {2, 3}) {
      r.check(exact_congruence_test(p, m, o.caps).congruence == ex.congruence,
              at + "verdict stable at multiple " + std::to_string(m));
    }
  }
  Domain z = Domain::integers();
  for (int n : {2, 3, 4, 5, 6, 8}) {
    ContextPtr ctx = make_context(z, z.principal(BigInt(n)), o.caps);
    for (const SubgroupClass& cl : subgroup_classes(ctx->full, true)) {
      Frame f = frame_subgroup(ctx, cl.rep);
      PermRep p = permrep_from_frame(f);
      CuspSplit c = cusp_split(p);
      ExactResult ex = exact_congruence_test(p, 1, o.caps);
      std::vector<std::size_t> widths;
      for (const CuspData& cd : cusps(f)) widths.push_back(cd.width);
      std::sort(widths.begin(), widths.end());
      std::string at = "Z/" + std::to_string(n) + " |H|=" + std::to_string(cl.rep.order()) + ": ";
      r.check(ex.congruence, at + "exact test says congruence");
      r.check(z.principal(BigInt(c.level)) == level(f), at + "levels agree");
      r.check(p.degree() == f.index() && widths == c.widths, at + "index and widths agree");
    }
  }
  return r;
}

SuiteResult suite_subspace(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "subspace";
  for (std::uint32_t p : {2u, 3u}) {
    Domain d = Domain::polynomials(FiniteField::standard(p, 1));
    for (int deg = 2; deg <= 4; ++deg) {
      std::uint32_t total = 1;
      for (int i = 0; i < deg; ++i) total *= p;
      for (std::uint32_t code = 0; code < total; ++code) {
        Poly f;
        for (std::uint32_t c = code, i = 0; i < static_cast<std::uint32_t>(deg); ++i, c /= p) {
          f.c.push_back(c % p);
        }
        f.c.push_back(1);
        if (f.c[0] == 0 || (deg == 2 && f.c[1] == 0)) continue;
        SubspaceScreen s = screen_translation_subspace(theorem_4_12_subspace(d, f), o.caps);
        r.check(s.level == d.principal(f) && s.ql_codim == 1 && !s.congruence_possible,
                "F" + std::to_string(p) + " f = " + d.format(f));
      }
    }
  }
  return r;
}

const std::map<std::string, std::function<SuiteResult(const SuiteOptions&)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(const SuiteOptions&)>> m{
      {"domains", suite_domains},     {"quotients", suite_quotients},
      {"matgroups", suite_matgroups}, {"lemma1_1", suite_lemma1_1},
      {"lemma4_5", suite_lemma4_5},   {"lemma2_6", suite_lemma2_6},
      {"cor1_3", suite_cor1_3},       {"theoremA", suite_theoremA},
      {"theoremBC", suite_theoremBC}, {"analyzer", suite_analyzer},
      {"examples", suite_examples},   {"modular", suite_modular},
      {"subspace", suite_subspace}};
  return m;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"domains",  "quotients", "matgroups", "lemma1_1", "lemma4_5", "lemma2_6", "cor1_3",
          "theoremA", "theoremBC", "analyzer",  "examples", "modular",  "subspace"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  auto it = registry().find(name);
  if (it == registry().end()) throw PreconditionError("unknown suite '" + name + "'");
  return it->second(opts);
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const SuiteOptions& opts) {
  for (const std::string& n : names) {
    if (!registry().count(n)) throw PreconditionError("unknown suite '" + n + "'");
  }
  std::vector<SuiteResult> out(names.size());
  std::vector<std::exception_ptr> errors(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      try {
        out[i] = run_suite(names[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(names.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace conglab
