#include <gtest/gtest.h>

#include "conglab/errors.hpp"
#include "conglab/examples.hpp"
#include "oracles.hpp"

using namespace conglab;

namespace {

std::vector<std::size_t> widths(const AnalysisReport& r) {
  std::vector<std::size_t> w;
  for (const CuspData& c : r.cusps) w.push_back(c.width);
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace

TEST(Ex213, BorelOverF3) {
  Example e = build_example("ex2_13");
  const Domain& d = e.frame.ctx->domain;
  AnalysisReport r = analyze(e.frame);
  EXPECT_EQ(r.index, 4u);
  EXPECT_EQ(widths(r), (std::vector<std::size_t>{1, 3}));
  std::vector<Ideal> want{d.unit_ideal(), d.parse_ideal("(t)")};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(r.amplitudes, want);
  EXPECT_FALSE(r.has_violation());
}

TEST(Ex213, OtherResidueFields) {
  Example e = build_example("ex2_13", Caps{}, "Fq[t] q=5", "(t+1)");
  AnalysisReport r = analyze(e.frame);
  EXPECT_EQ(widths(r), (std::vector<std::size_t>{1, 5}));
  Example e4 = build_example("ex2_13", Caps{}, "Fq[t] q=4", "(t+u)");
  EXPECT_EQ(analyze(e4.frame).index, 5u);
  EXPECT_THROW(build_example("ex2_13", Caps{}, "Fq[t] q=3", "(t^2)"), PreconditionError);
  EXPECT_THROW(build_example("ex2_13", Caps{}, "Z", "(3)"), PreconditionError);
}

TEST(Ex32, A5InsideSL2F9) {
  Example e = build_example("ex3_2");
  const Frame& f = e.frame;
  EXPECT_EQ(f.image.order(), 120u);
  EXPECT_EQ(f.index(), 6u);
  // PSL2(F9) is simple, so the core is {I, -I}.
  EXPECT_EQ(oracle::conjugate_intersection(f.image, f.ctx->full).size(), 2u);
  EXPECT_EQ(f.core.order(), 2u);
  AnalysisReport r = analyze(f);
  ASSERT_EQ(r.cusps.size(), 1u);
  EXPECT_EQ(r.cusps[0].m, 2u);
  EXPECT_EQ(r.cusps[0].quasi_amplitude.index_in_ring(), 3u);
  EXPECT_EQ(r.level, f.ctx->modulus);
  EXPECT_EQ(r.theorem_B.status, "pass");
  EXPECT_EQ(e.facts["b_identity_index"], 3);
  EXPECT_EQ(e.facts["b_zeta_differs"], true);
  // zeta has multiplicative order 8 in F9.
  const QuotientRing& ring = *f.ctx->ring;
  Residue zeta = ring.parse(e.facts["zeta"].get<std::string>());
  Residue z = zeta;
  std::size_t k = 1;
  for (; z != ring.one(); z = ring.mul(z, zeta)) ++k;
  EXPECT_EQ(k, 8u);
}

TEST(Ex35, NoExtremalQuasiAmplitude) {
  Example e = build_example("ex3_5");
  AnalysisReport r = analyze(e.frame);
  ASSERT_EQ(r.cusps.size(), 2u);
  const Ideal three = e.frame.ctx->domain.parse_ideal("(3)");
  for (const CuspData& c : r.cusps) EXPECT_EQ(c.amplitude, three);
  EXPECT_EQ(r.amplitudes, std::vector<Ideal>{three});
  EXPECT_EQ(e.facts["has_minimum"], false);
  EXPECT_EQ(e.facts["has_maximum"], false);
  EXPECT_EQ(r.theorem_A.status, "pass");
  // Independent re-check over every g.
  std::vector<AdditiveSubgroup> coll = quasi_amplitude_collection(e.frame);
  SL2 ops(e.frame.ctx->ring);
  std::set<std::vector<Residue>> brute;
  for (MatCode g : e.frame.ctx->full.elements()) {
    std::vector<Residue> b;
    for (Residue x = 0; x < 9; ++x)
      if (e.frame.image.contains(ops.mul(g, ops.mul(ops.T(x), ops.inv(g))))) b.push_back(x);
    brute.insert(b);
  }
  EXPECT_EQ(coll.size(), brute.size());
}

TEST(Ex49, NormalWithSquareEntries) {
  Example e = build_example("ex4_9");
  const Domain& d = e.frame.ctx->domain;
  EXPECT_EQ(e.frame.image.order(), 16u);
  EXPECT_TRUE(e.frame.normal);
  AnalysisReport r = analyze(e.frame);
  EXPECT_EQ(r.level, d.power(d.parse_ideal("(w)"), 4));
  EXPECT_FALSE(r.quasi_level == ideal_image(e.frame.ctx->ring, r.level));
  EXPECT_EQ(r.condition_L.failed_clause, "i");
  EXPECT_EQ(e.facts["lambda"], (nlohmann::ordered_json{"0", "2"}));
  EXPECT_FALSE(r.has_violation());
}

TEST(Ex410, IndexThreeOverTwoPrimes) {
  Example e = build_example("ex4_10");
  AnalysisReport r = analyze(e.frame);
  const Domain& d = e.frame.ctx->domain;
  EXPECT_TRUE(r.normal);
  EXPECT_EQ(r.index, 3u);
  EXPECT_EQ(r.level, d.parse_ideal("(t^2+t)"));
  EXPECT_TRUE(r.quasi_level.contains(e.frame.ctx->ring->one()));
  EXPECT_EQ(e.facts["G_over_N"], 9);
  EXPECT_EQ(e.facts["N_over_Gq"], 64);
}

TEST(Ex54, TightLevelBound) {
  Example e = build_example("ex5_4");
  AnalysisReport r = analyze(e.frame);
  const Domain& d = e.frame.ctx->domain;
  EXPECT_TRUE(r.normal);
  EXPECT_EQ(r.index, 2u);
  EXPECT_EQ(d.residue_norm(r.level), 4);
  EXPECT_EQ(r.quasi_level.index_in_ring(), 2u);
  EXPECT_NE(r.level_index.detail.find("tight"), std::string::npos);
}

TEST(Examples, NamesAndRejections) {
  EXPECT_EQ(example_names().size(), 6u);
  EXPECT_THROW(build_example("ex9_9"), PreconditionError);
  EXPECT_THROW(build_example("ex3_2", Caps{}, "Fq[t] q=3"), PreconditionError);
}
