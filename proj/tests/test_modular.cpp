#include <gtest/gtest.h>

#include <array>
#include <map>
#include <numeric>
#include <random>

#include "conglab/errors.hpp"
#include "conglab/modular.hpp"
#include "conglab/subgroup_lattice.hpp"
#include "oracles.hpp"

using namespace conglab;

namespace {

using Perm = std::vector<std::uint32_t>;

PermRep from_json(const char* text) { return parse_permrep(nlohmann::json::parse(text)); }

/// Number of index-n subgroups of C2 * C3 from homomorphism counts:
/// t_n = h_n - sum_k C(n-1, k-1) t_k h_(n-k), a_n = t_n / (n-1)!.
std::vector<std::uint64_t> subgroup_counts(std::size_t max) {
  std::vector<std::uint64_t> i2{1, 1}, i3{1, 1}, h, t(max + 1, 0), a(max + 1, 0);
  for (std::uint64_t n = 2; n <= max; ++n) {
    i2.push_back(i2[n - 1] + (n - 1) * i2[n - 2]);
    i3.push_back(i3[n - 1] + (n >= 3 ? (n - 1) * (n - 2) * i3[n - 3] : 0));
  }
  for (std::size_t n = 0; n <= max; ++n) h.push_back(i2[n] * i3[n]);
  auto binom = [](std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  std::uint64_t fact = 1;
  for (std::size_t n = 1; n <= max; ++n) {
    std::uint64_t x = h[n];
    for (std::size_t k = 1; k < n; ++k) x -= binom(n - 1, k - 1) * t[k] * h[n - k];
    t[n] = x;
    if (n > 1) fact *= n - 1;
    a[n] = t[n] / fact;
  }
  return a;
}

/// Point stabilizers in the class of p: distinct relabelings by breadth-first
/// scan over S then T from each base point.
std::size_t class_size(const PermRep& p) {
  std::set<std::pair<Perm, Perm>> forms;
  std::size_t n = p.degree();
  for (std::uint32_t b = 0; b < n; ++b) {
    std::vector<std::uint32_t> label(n, UINT32_MAX), order{b};
    label[b] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (const Perm* g : {&p.S, &p.T}) {
        std::uint32_t y = (*g)[order[k]];
        if (label[y] == UINT32_MAX) {
          label[y] = static_cast<std::uint32_t>(order.size());
          order.push_back(y);
        }
      }
    }
    Perm s(n), t(n);
    for (std::size_t x = 0; x < n; ++x) {
      s[label[x]] = label[p.S[x]];
      t[label[x]] = label[p.T[x]];
    }
    forms.insert({s, t});
  }
  return forms.size();
}

/// The action factors through PSL2(Z/N) iff the diagonal group generated by
/// (S mod N, sigma_S) and (T mod N, sigma_T) is no larger than its first
/// projection.
bool factors_through(const PermRep& p, long long n) {
  using M = std::array<long long, 4>;
  auto mul = [&](const M& x, const M& y) {
    return M{oracle::mod(x[0] * y[0] + x[1] * y[2], n), oracle::mod(x[0] * y[1] + x[1] * y[3], n),
             oracle::mod(x[2] * y[0] + x[3] * y[2], n), oracle::mod(x[2] * y[1] + x[3] * y[3], n)};
  };
  auto proj = [&](const M& x) {
    M y{oracle::mod(-x[0], n), oracle::mod(-x[1], n), oracle::mod(-x[2], n), oracle::mod(-x[3], n)};
    return std::min(x, y);
  };
  const M gs{0, oracle::mod(-1, n), 1 % n, 0}, gt{1 % n, 1 % n, 0, 1 % n};
  Perm id(p.degree());
  std::iota(id.begin(), id.end(), 0u);
  std::set<std::pair<M, Perm>> seen{{proj(M{1 % n, 0, 0, 1 % n}), id}};
  std::vector<std::pair<M, Perm>> todo(seen.begin(), seen.end());
  std::set<M> mats{todo[0].first};
  while (!todo.empty()) {
    auto [m, pi] = todo.back();
    todo.pop_back();
    for (int g = 0; g < 2; ++g) {
      const Perm& sigma = g == 0 ? p.S : p.T;
      Perm next(pi.size());
      for (std::size_t i = 0; i < pi.size(); ++i) next[i] = sigma[pi[i]];
      std::pair<M, Perm> st{proj(mul(m, g == 0 ? gs : gt)), next};
      if (seen.insert(st).second) {
        mats.insert(st.first);
        todo.push_back(st);
      }
    }
  }
  return seen.size() == mats.size();
}

ContextPtr zn(long long n) {
  Domain z = Domain::integers();
  return make_context(z, z.principal(BigInt(n)));
}

}  // namespace

TEST(PermRepParse, ValidAndInvalid) {
  PermRep full = from_json(R"({"n":1,"S":[0],"T":[0]})");
  EXPECT_EQ(cusp_split(full).widths, std::vector<std::size_t>{1});
  EXPECT_EQ(cusp_split(full).level, 1u);
  // S of order 4.
  EXPECT_THROW(from_json(R"({"n":4,"S":[1,2,3,0],"T":[0,1,2,3]})"), ParseError);
  // Two copies of the trivial action.
  EXPECT_THROW(from_json(R"({"n":2,"S":[0,1],"T":[0,1]})"), ParseError);
  EXPECT_THROW(from_json(R"({"n":2,"S":[0],"T":[0,1]})"), ParseError);
  EXPECT_THROW(from_json(R"({"n":2,"S":[0,0],"T":[0,1]})"), ParseError);
  EXPECT_THROW(from_json(R"({"S":[0],"T":[0]})"), ParseError);
  // (ST)^3 fails.
  EXPECT_THROW(from_json(R"({"n":2,"S":[1,0],"T":[0,1]})"), ParseError);
}

TEST(ModularFrames, GammaZeroTwoAndGammaTwo) {
  ContextPtr ctx = zn(2);
  SL2 ops(ctx->ring);
  Frame g0 = frame_subgroup(ctx, FinMatGroup::closure(ctx->ring, {ops.T(1)}));
  PermRep p0 = permrep_from_frame(g0);
  EXPECT_EQ(p0.degree(), 3u);
  EXPECT_EQ(cusp_split(p0).widths, (std::vector<std::size_t>{1, 2}));
  ExactResult e0 = exact_congruence_test(p0);
  EXPECT_TRUE(e0.congruence);
  EXPECT_EQ(e0.level, 2u);
  EXPECT_EQ(from_json(to_json(p0).dump().c_str()), p0);

  Frame g2 = frame_subgroup(ctx, FinMatGroup::closure(ctx->ring, {ops.identity()}));
  PermRep p2 = permrep_from_frame(g2);
  EXPECT_EQ(p2.degree(), 6u);
  CuspSplit c2 = cusp_split(p2);
  EXPECT_EQ(c2.widths, (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(c2.level, 2u);
  EXPECT_EQ(screen_perm(p2, true).conclusion, "congruence, level 2");
}

TEST(ModularFrames, RejectSubgroupsWithoutMinusIdentity) {
  ContextPtr ctx = zn(3);
  SL2 ops(ctx->ring);
  Frame f = frame_subgroup(ctx, FinMatGroup::closure(ctx->ring, {ops.T(1)}));
  EXPECT_THROW(permrep_from_frame(f), PreconditionError);
}

TEST(Psl2Order, MatchesBruteCount) {
  for (std::size_t n = 2; n <= 10; ++n) {
    EXPECT_EQ(psl2_order(n), oracle::psl2_zn_count(static_cast<long long>(n))) << n;
  }
  EXPECT_EQ(psl2_order(6), 72u);
  EXPECT_EQ(psl2_order(7), 168u);
  EXPECT_EQ(psl2_order(8), 192u);
  Caps small;
  small.group = 100;
  EXPECT_THROW(psl2_order(7, small), CapExceeded);
}

TEST(Larcher, Splits) {
  EXPECT_FALSE(larcher_check({{3, 4}, 12}).min_ok);
  EXPECT_FALSE(larcher_check({{2, 5}, 10}).min_ok);
  EXPECT_TRUE(larcher_check({{1, 6}, 6}).pass());
  EXPECT_TRUE(larcher_check({{1, 1, 7}, 7}).pass());
  LarcherResult r = larcher_check({{2, 4, 6}, 12});
  EXPECT_TRUE(r.min_ok);
  EXPECT_FALSE(r.max_ok);
}

TEST(LowIndex, ClassSizesSumToSubgroupCounts) {
  std::vector<std::uint64_t> a = subgroup_counts(9);
  EXPECT_EQ(a[1], 1u);
  EXPECT_EQ(a[2], 1u);
  EXPECT_EQ(a[3], 4u);
  std::vector<PermRep> reps = low_index_enumerate(9);
  std::vector<std::uint64_t> got(10, 0);
  std::set<std::pair<Perm, Perm>> forms;
  for (const PermRep& p : reps) {
    EXPECT_NO_THROW(p.validate());
    got[p.degree()] += class_size(p);
    EXPECT_TRUE(forms.insert({canonical_conjugacy_form(p).S, canonical_conjugacy_form(p).T}).second);
  }
  for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(got[n], a[n]) << "index " << n;
  Caps c;
  c.index = 6;
  EXPECT_THROW(low_index_enumerate(7, c), CapExceeded);
}

TEST(LowIndex, CanonicalFormIsConjugationInvariant) {
  std::mt19937_64 rng(8);
  for (const PermRep& p : low_index_enumerate(7)) {
    std::size_t n = p.degree();
    Perm relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0u);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    PermRep q{Perm(n), Perm(n)};
    for (std::size_t x = 0; x < n; ++x) {
      q.S[relabel[x]] = relabel[p.S[x]];
      q.T[relabel[x]] = relabel[p.T[x]];
    }
    EXPECT_EQ(canonical_conjugacy_form(q), canonical_conjugacy_form(p));
  }
}

TEST(ExactTest, AgreesWithDiagonalOracle) {
  std::size_t noncongruence = 0;
  for (const PermRep& p : low_index_enumerate(8)) {
    ExactResult e = exact_congruence_test(p);
    bool oracle_says = factors_through(p, static_cast<long long>(cusp_split(p).level));
    EXPECT_EQ(e.congruence, oracle_says) << to_json(p).dump();
    if (!e.congruence) {
      ++noncongruence;
      EXPECT_GE(e.failing_edge, 0);
      // Containing a deeper principal subgroup would force the level one too.
      EXPECT_FALSE(exact_congruence_test(p, 2).congruence);
    }
  }
  EXPECT_GT(noncongruence, 0u);
}

TEST(ExactTest, FramesAreCongruenceAtTheirLevel) {
  for (long long n : {2, 3, 4, 6}) {
    ContextPtr ctx = zn(n);
    for (const SubgroupClass& cl : subgroup_classes(ctx->full, true)) {
      Frame f = frame_subgroup(ctx, cl.rep);
      PermRep p = permrep_from_frame(f);
      EXPECT_EQ(p.degree(), f.index());
      ExactResult e = exact_congruence_test(p);
      EXPECT_TRUE(e.congruence);
      EXPECT_EQ(BigInt(e.level), std::get<BigInt>(level(f).rep));
    }
  }
}

TEST(Screens, StepOrderAndConclusions) {
  for (const PermRep& p : low_index_enumerate(7)) {
    PermScreen s = screen_perm(p, false);
    ASSERT_EQ(s.steps.size(), 5u);
    EXPECT_EQ(s.steps[0].name, "cusp_split");
    EXPECT_EQ(s.steps[4].name, "exact");
    std::vector<std::size_t> w = s.split.widths;
    if (w == std::vector<std::size_t>{1, 6} || w == std::vector<std::size_t>{1, 1, 7}) {
      EXPECT_EQ(s.conclusion, "non-congruence (**)");
    }
    if (w == std::vector<std::size_t>{2, 5} || w == std::vector<std::size_t>{3, 4}) {
      EXPECT_EQ(s.conclusion, "non-congruence (Larcher min)");
    }
    PermScreen full = screen_perm(p, true);
    EXPECT_EQ(full.conclusion, s.conclusion);
    for (const ScreenStep& st : full.steps) EXPECT_NE(st.status, "skipped");
  }
}
