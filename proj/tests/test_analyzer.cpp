#include <gtest/gtest.h>

#include <random>

#include "conglab/analyzer.hpp"
#include "conglab/errors.hpp"
#include "conglab/subgroup_lattice.hpp"
#include "oracles.hpp"

using namespace conglab;

namespace {

ContextPtr context(const char* domain, const char* modulus) {
  Domain d = Domain::parse(domain);
  return make_context(d, d.parse_ideal(modulus));
}

std::set<Residue> as_set(const AdditiveSubgroup& a) { return {a.elements.begin(), a.elements.end()}; }

/// {x : g T(x) g^-1 in H}, straight from the definition.
std::set<Residue> brute_translations(const FinMatGroup& h, MatCode g) {
  SL2 ops = h.ops();
  std::set<Residue> out;
  for (Residue x = 0; x < h.ring()->size(); ++x)
    if (h.contains(ops.mul(g, ops.mul(ops.T(x), ops.inv(g))))) out.insert(x);
  return out;
}

const std::vector<std::pair<const char*, const char*>> kFamilies = {
    {"Z", "(6)"}, {"Z", "(8)"}, {"Fq[t] q=3", "(t)"}, {"Fq[t] q=2", "(t^2)"},
    {"Q(sqrt(-1))", "(3)"}, {"Q(sqrt(-2))", "(w)^2"}};

}  // namespace

TEST(Frames, Examples) {
  Domain z = Domain::integers();
  ContextPtr z6 = context("Z", "(6)");
  Frame trivial = frame_subgroup(z, z.principal(BigInt(6)), {SL2(z6->ring).identity()});
  EXPECT_EQ(trivial.index(), 144u);
  EXPECT_TRUE(trivial.normal);
  ContextPtr f3 = context("Fq[t] q=3", "(t)");
  Frame borel = frame_subgroup(f3, f3->borel);
  EXPECT_EQ(borel.index(), 4u);
  EXPECT_FALSE(borel.normal);
  EXPECT_EQ(cusps(borel).size(), 2u);
}

TEST(Invariants, MatchDefinitionsOnEveryClass) {
  for (auto [dom, mod] : kFamilies) {
    ContextPtr ctx = context(dom, mod);
    const Domain& d = ctx->domain;
    const QuotientRing& r = *ctx->ring;
    for (const SubgroupClass& cl : subgroup_classes(ctx->full)) {
      Frame f = frame_subgroup(ctx, cl.rep);
      std::set<Residue> ql = oracle::brute_quasi_level(cl.rep, ctx->full);
      EXPECT_EQ(as_set(quasi_level(f)), ql) << dom << " " << mod;
      Ideal l = level(f);
      EXPECT_EQ(l, oracle::largest_divisor_inside(r, ql));
      // The level is also the meet of the amplitudes over every g.
      Ideal meet = d.unit_ideal();
      for (MatCode g : ctx->full.elements()) meet = d.intersect(meet, amplitude_at(f, g));
      EXPECT_EQ(meet, l);
      // Order ideal from the generators a - d, b, c of every element.
      std::vector<Element> gens{r.lift(0)};
      for (MatCode x : cl.rep.elements()) {
        Mat2 m = unpack(x);
        gens.push_back(r.lift(r.sub(m.a, m.d)));
        gens.push_back(r.lift(m.b));
        gens.push_back(r.lift(m.c));
      }
      EXPECT_EQ(order_ideal(f), d.sum(d.ideal(gens), ctx->modulus));
      EXPECT_TRUE(d.contains(order_ideal(f), l));
      // Cusps are the H\G/B double cosets, widths summing to the index.
      std::vector<CuspData> cs = cusps(f);
      EXPECT_EQ(cs.size(), double_cosets(ctx->full, cl.rep, ctx->borel).size());
      for (const CuspData& c : cs) {
        std::set<Residue> b = brute_translations(cl.rep, c.rep);
        EXPECT_EQ(as_set(c.quasi_amplitude), b);
        EXPECT_EQ(c.amplitude, oracle::largest_divisor_inside(r, b));
        EXPECT_EQ(c.amplitude, amplitude_at(f, c.rep));
        EXPECT_EQ(c.rescaled.front(), c.quasi_amplitude);
      }
      EXPECT_FALSE(analyze(f).has_violation()) << dom << " " << mod << " |H|=" << cl.rep.order();
    }
  }
}

TEST(Invariants, ConjugationInvariance) {
  ContextPtr ctx = context("Z", "(8)");
  std::mt19937_64 rng(2);
  SL2 ops(ctx->ring);
  for (const SubgroupClass& cl : subgroup_classes(ctx->full)) {
    Frame f = frame_subgroup(ctx, cl.rep);
    for (int trial = 0; trial < 3; ++trial) {
      MatCode k = ctx->full.elements()[rng() % ctx->full.order()];
      MatCode g = ctx->full.elements()[rng() % ctx->full.order()];
      Frame fk = frame_subgroup(ctx, conjugate(cl.rep, k));
      EXPECT_EQ(amplitude_at(fk, ops.mul(ops.inv(k), g)), amplitude_at(f, g));
    }
  }
}

TEST(Invariants, PrincipalFramesHaveEqualLevels) {
  for (auto [dom, mod] : kFamilies) {
    ContextPtr ctx = context(dom, mod);
    const Domain& d = ctx->domain;
    for (const Ideal& a : oracle::divisor_ideals(d, ctx->modulus)) {
      Frame f = frame_subgroup(ctx, principal_congruence_image(ctx->ring, a));
      EXPECT_EQ(level(f), a);
      EXPECT_EQ(order_ideal(f), a);
      EXPECT_EQ(largest_ideal_inside(quasi_level(f)), a);
      EXPECT_EQ(as_set(quasi_level(f)), oracle::image_by_membership(*ctx->ring, a));
    }
  }
}

TEST(Verdicts, LevelIndexBounds) {
  ContextPtr ctx = context("Z", "(12)");
  for (const SubgroupClass& cl : subgroup_classes(ctx->full)) {
    Frame f = frame_subgroup(ctx, cl.rep);
    Ideal l = level(f);
    EXPECT_LE(ctx->domain.residue_norm(l), BigInt(f.index()));
    EXPECT_NE(level_index_check(f, l).status, "violation");
  }
  ContextPtr poly = context("Fq[t] q=3", "(t)");
  Frame fp = frame_subgroup(poly, poly->borel);
  EXPECT_EQ(level_index_check(fp, level(fp)).status, "not_applicable");
}

TEST(Verdicts, CuspSplitAndTheoremAOnBorel) {
  ContextPtr ctx = context("Fq[t] q=3", "(t)");
  Frame f = frame_subgroup(ctx, ctx->borel);
  std::vector<CuspData> cs = cusps(f);
  EXPECT_EQ(cusp_split_check(f, cs).status, "pass");
  EXPECT_EQ(theorem_A_check(f, cs).status, "pass");
  std::size_t total = 0;
  for (const CuspData& c : cs) total += c.width;
  EXPECT_EQ(total, f.index());
}

TEST(Verdicts, Theorem27SearchFindsRepresentative) {
  ContextPtr ctx = context("Z", "(12)");
  const Domain& d = ctx->domain;
  for (const SubgroupClass& cl : subgroup_classes(ctx->full)) {
    Frame f = frame_subgroup(ctx, cl.rep);
    std::vector<CuspData> cs = cusps(f);
    for (const CuspData& a : cs) {
      for (const CuspData& b : cs) {
        MatCode g0 = theorem_2_7_search(f, cs, a.rep, b.rep, a.amplitude, b.amplitude);
        EXPECT_TRUE(d.contains(amplitude_at(f, g0), d.sum(a.amplitude, b.amplitude)));
      }
    }
  }
}

TEST(DividesFactorial, MatchesDirectProduct) {
  for (std::size_t n = 0; n <= 10; ++n) {
    BigInt fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= k;
    for (long long m = 1; m <= 200; ++m) {
      EXPECT_EQ(divides_factorial(BigInt(m), n), fact % m == 0) << m << " " << n;
    }
  }
}

TEST(Frames, RejectGeneratorsOffTheDeterminant) {
  Domain z = Domain::integers();
  EXPECT_THROW(frame_subgroup(z, z.principal(BigInt(5)), {pack({2, 0, 0, 2})}), PreconditionError);
}
