#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "conglab/domain.hpp"
#include "conglab/errors.hpp"
#include "conglab/quotient.hpp"
#include "oracles.hpp"

using namespace conglab;

namespace {

const BigInt kCap = BigInt(1) << 64;

Ideal z(long long n) { return Domain::integers().principal(BigInt(n)); }

std::vector<long long> as_ints(const Poly& p) { return {p.c.begin(), p.c.end()}; }

Poly random_poly(std::mt19937_64& rng, std::uint32_t p, int max_deg) {
  Poly x;
  int deg = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
  for (int i = 0; i <= deg; ++i) x.c.push_back(static_cast<std::uint32_t>(rng() % p));
  while (!x.c.empty() && x.c.back() == 0) x.c.pop_back();
  return x;
}

}  // namespace

TEST(Parse, Integers) { EXPECT_EQ(Domain::parse("Z").kind(), DomainKind::integers); }

TEST(Parse, F9WithExplicitModulus) {
  // u^2 + 1 has no root in F_3, so it is irreducible.
  for (int x = 0; x < 3; ++x) EXPECT_NE((x * x + 1) % 3, 0);
  Domain d = Domain::parse("Fq[t] q=9 mod=u^2+1");
  EXPECT_EQ(d.kind(), DomainKind::polynomials);
  EXPECT_EQ(d.field().order(), 9u);
  EXPECT_EQ(d.field().modulus(), (PrimePoly{1, 0, 1}));
}

TEST(Parse, QuadraticMinus7UsesHalfIntegralBasis) {
  // ((1 + sqrt(-7))/2)^2 = (1 - 7 + 2 sqrt(-7))/4 = (-6 + 2 sqrt(-7))/4 = w - 2.
  Domain d = Domain::parse("Q(sqrt(-7)) maximal");
  EXPECT_EQ(d.c0(), -2);
  EXPECT_EQ(d.c1(), 1);
}

TEST(Parse, QuadraticMinus5UsesSqrt) {
  Domain d = Domain::parse("Q(sqrt(-5)) maximal");
  EXPECT_EQ(d.c0(), -5);
  EXPECT_EQ(d.c1(), 0);
}

TEST(Parse, Rejections) {
  EXPECT_THROW(Domain::parse("R[x]"), ParseError);
  EXPECT_THROW(Domain::parse("Fq[t] q=6"), ParseError);
  EXPECT_THROW(Domain::parse("Fq[t] q=9 mod=u^2+2"), PreconditionError);  // (u-1)(u+1)
  EXPECT_THROW(Domain::parse("Q(sqrt(-4)) maximal"), PreconditionError);
  EXPECT_THROW(Domain::parse("Q(sqrt(3)) maximal"), PreconditionError);
}

TEST(Parse, UnitTables) {
  EXPECT_EQ(Domain::integers().units().size(), 2u);
  EXPECT_EQ(Domain::parse("Q(sqrt(-1))").units().size(), 4u);
  EXPECT_EQ(Domain::parse("Q(sqrt(-3))").units().size(), 6u);
  EXPECT_EQ(Domain::parse("Q(sqrt(-13))").units().size(), 2u);
  EXPECT_EQ(Domain::parse("Fq[t] q=9").units().size(), 8u);
}

TEST(Integers, IdealArithmeticMatchesGcdLcm) {
  Domain d = Domain::integers();
  for (long long a = 1; a <= 30; ++a) {
    for (long long b = 1; b <= 30; ++b) {
      EXPECT_EQ(d.sum(z(a), z(b)), z(std::gcd(a, b)));
      EXPECT_EQ(d.intersect(z(a), z(b)), z(std::lcm(a, b)));
      EXPECT_EQ(d.product(z(a), z(b)), z(a * b));
    }
  }
  EXPECT_EQ(d.sum(z(4), z(6)), z(2));
  EXPECT_EQ(d.principal(BigInt(-12)), z(12));
}

TEST(Integers, FactorExample) {
  Domain d = Domain::integers();
  PrimeFactorization f = d.factor(z(12), kCap);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].prime, z(2));
  EXPECT_EQ(f[0].exponent, 2u);
  EXPECT_EQ(f[1].prime, z(3));
  EXPECT_EQ(f[1].exponent, 1u);
  EXPECT_THROW(d.factor(z(0), kCap), PreconditionError);
  EXPECT_THROW(d.factor(z(1000003), BigInt(1000)), CapExceeded);
}

TEST(Polynomials, ArithmeticMatchesSchoolbook) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Domain d = Domain::parse("Fq[t] q=" + std::to_string(p));
    std::mt19937_64 rng(p);
    for (int trial = 0; trial < 200; ++trial) {
      Poly x = random_poly(rng, p, 5), y = random_poly(rng, p, 4);
      EXPECT_EQ(as_ints(d.poly_mul(x, y)), oracle::conv(as_ints(x), as_ints(y), p));
      if (y.c.empty()) continue;
      auto [q, r] = d.poly_divmod(x, y);
      EXPECT_LT(r.degree(), y.degree());
      EXPECT_EQ(d.poly_add(d.poly_mul(q, y), r), x);
    }
  }
}

TEST(Polynomials, GcdIsLargestCommonDivisor) {
  Domain d = Domain::parse("Fq[t] q=3");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Poly x = random_poly(rng, 3, 4), y = random_poly(rng, 3, 4);
    if (x.c.empty() || y.c.empty()) continue;
    Poly g = d.poly_gcd(x, y);
    EXPECT_TRUE(d.poly_divmod(x, g).second.c.empty());
    EXPECT_TRUE(d.poly_divmod(y, g).second.c.empty());
    // No monic common divisor of higher degree, by enumerating all of them.
    for (int deg = g.degree() + 1; deg <= std::min(x.degree(), y.degree()); ++deg) {
      std::size_t count = 1;
      for (int i = 0; i < deg; ++i) count *= 3;
      for (std::size_t code = 0; code < count; ++code) {
        Poly h;
        for (std::size_t c = code, i = 0; i < static_cast<std::size_t>(deg); ++i, c /= 3)
          h.c.push_back(static_cast<std::uint32_t>(c % 3));
        h.c.push_back(1);
        EXPECT_FALSE(d.poly_divmod(x, h).second.c.empty() &&
                     d.poly_divmod(y, h).second.c.empty());
      }
    }
  }
}

TEST(Polynomials, ProductExample) {
  Domain d = Domain::parse("Fq[t] q=3");
  EXPECT_EQ(d.product(d.parse_ideal("(t)"), d.parse_ideal("(t+1)")), d.parse_ideal("(t^2+t)"));
  PrimeFactorization f = d.factor(d.parse_ideal("(t^2+t)"), kCap);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].exponent, 1u);
  EXPECT_EQ(f[1].exponent, 1u);
}

TEST(Polynomials, ResidueNorm) {
  Domain d = Domain::parse("Fq[t] q=9");
  EXPECT_EQ(d.residue_norm(d.parse_ideal("(t)")), 9);
  EXPECT_EQ(d.residue_norm(d.parse_ideal("(t^2+1)")), 81);
}

TEST(Quadratic, IdealOpsMatchLatticeSpan) {
  for (const char* desc : {"Q(sqrt(-1))", "Q(sqrt(-2))", "Q(sqrt(-3))", "Q(sqrt(-5))",
                           "Q(sqrt(-7))", "Q(sqrt(-13))"}) {
    Domain d = Domain::parse(desc);
    long long c0 = to_ll(d.c0()), c1 = to_ll(d.c1());
    std::mt19937_64 rng(std::hash<std::string>{}(desc));
    auto pick = [&]() {
      std::vector<std::pair<long long, long long>> g;
      std::size_t k = 1 + rng() % 2;
      for (std::size_t i = 0; i < k; ++i) {
        long long a = static_cast<long long>(rng() % 9) - 4, b = static_cast<long long>(rng() % 5) - 2;
        if (a == 0 && b == 0) a = 1;
        g.push_back({a, b});
      }
      return g;
    };
    auto to_ideal = [&](const std::vector<std::pair<long long, long long>>& g) {
      std::vector<Element> e;
      for (auto [a, b] : g) e.push_back(QuadInt{a, b});
      return d.ideal(e);
    };
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 25; ++trial) {
      auto gi = pick(), gj = pick();
      Ideal i = to_ideal(gi), j = to_ideal(gj);
      long long ni = to_ll(d.residue_norm(i)), nj = to_ll(d.residue_norm(j));
      long long n = ni * nj;
      if (n > 90) continue;
      ++tested;
      auto si = oracle::quad_span(c0, c1, gi, n), sj = oracle::quad_span(c0, c1, gj, n);
      EXPECT_EQ(static_cast<long long>(si.size()) * ni, n * n) << desc;
      EXPECT_EQ(oracle::quad_members(d, i, n), si) << desc;
      std::vector<std::pair<long long, long long>> both = gi, prods;
      both.insert(both.end(), gj.begin(), gj.end());
      for (auto [a, b] : gi) {
        for (auto [x, y] : gj) {
          // (a + b w)(x + y w) = ax + b y c0 + (ay + bx + b y c1) w
          prods.push_back({a * x + b * y * c0, a * y + b * x + b * y * c1});
        }
      }
      EXPECT_EQ(oracle::quad_members(d, d.sum(i, j), n), oracle::quad_span(c0, c1, both, n));
      EXPECT_EQ(oracle::quad_members(d, d.product(i, j), n), oracle::quad_span(c0, c1, prods, n));
      std::set<std::pair<long long, long long>> meet;
      std::set_intersection(si.begin(), si.end(), sj.begin(), sj.end(),
                            std::inserter(meet, meet.begin()));
      EXPECT_EQ(oracle::quad_members(d, d.intersect(i, j), n), meet);
    }
    EXPECT_GE(tested, 10) << desc;
  }
}

TEST(Quadratic, Examples) {
  Domain d13 = Domain::parse("Q(sqrt(-13))");
  EXPECT_TRUE(d13.is_unit_ideal(d13.sum(d13.parse_ideal("(3)"), d13.parse_ideal("(5)"))));
  EXPECT_EQ(d13.residue_norm(d13.parse_ideal("(3)")), 9);
  // x^2 + 13 = x^2 + 1 has no root mod 3, so (3) is prime.
  EXPECT_EQ(d13.factor(d13.parse_ideal("(3)"), kCap).size(), 1u);

  Domain d2 = Domain::parse("Q(sqrt(-2))");
  Ideal p = d2.parse_ideal("(w)");
  EXPECT_EQ(d2.product(p, p), d2.parse_ideal("(2)"));
  PrimeFactorization f = d2.factor(d2.parse_ideal("(2)"), kCap);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].prime, p);
  EXPECT_EQ(f[0].exponent, 2u);
  EXPECT_EQ(d2.format_ideal(d2.power(p, 4)), "[[4,0],[0,4]]");
}

TEST(Quadratic, HnfIsCanonical) {
  Domain d = Domain::parse("Q(sqrt(-5))");
  // (2, 1 + w) is the non-principal prime over 2.
  Ideal a = d.ideal({QuadInt{2, 0}, QuadInt{1, 1}});
  Ideal b = d.ideal({QuadInt{3, 1}, QuadInt{-1, 1}, QuadInt{6, 0}});
  EXPECT_EQ(a, b);
  const Hnf& h = std::get<Hnf>(a.rep);
  EXPECT_GT(h.a, 0);
  EXPECT_GT(h.c, 0);
  EXPECT_GE(h.b, 0);
  EXPECT_LT(h.b, h.a);
  EXPECT_EQ(d.residue_norm(a), h.a * h.c);
  EXPECT_EQ(d.product(a, a), d.principal(QuadInt{2, 0}));
}

class AllKinds : public ::testing::TestWithParam<const char*> {};

TEST_P(AllKinds, IdealLaws) {
  Domain d = Domain::parse(GetParam());
  std::mt19937_64 rng(11);
  auto rand_elem = [&]() -> Element {
    switch (d.kind()) {
      case DomainKind::integers:
        return BigInt(1 + static_cast<long long>(rng() % 40));
      case DomainKind::polynomials: {
        Poly x = random_poly(rng, d.field().order(), 3);
        if (x.c.empty()) x.c.push_back(1);
        return x;
      }
      default: {
        QuadInt x{static_cast<long long>(rng() % 9) - 4, static_cast<long long>(rng() % 7) - 3};
        if (x.a == 0 && x.b == 0) x.a = 3;
        return x;
      }
    }
  };
  auto rand_ideal = [&]() { return d.ideal({rand_elem(), rand_elem()}); };
  for (int trial = 0; trial < 40; ++trial) {
    Ideal i = rand_ideal(), j = rand_ideal(), k = rand_ideal();
    EXPECT_EQ(d.sum(i, j), d.sum(j, i));
    EXPECT_EQ(d.product(i, j), d.product(j, i));
    EXPECT_EQ(d.sum(d.sum(i, j), k), d.sum(i, d.sum(j, k)));
    EXPECT_EQ(d.product(d.product(i, j), k), d.product(i, d.product(j, k)));
    EXPECT_EQ(d.sum(i, i), i);
    EXPECT_EQ(d.intersect(i, i), i);
    Ideal ij = d.product(i, j), meet = d.intersect(i, j), join = d.sum(i, j);
    EXPECT_TRUE(d.contains(meet, ij));
    EXPECT_TRUE(d.contains(i, meet));
    EXPECT_TRUE(d.contains(join, i));
    EXPECT_EQ(d.product(join, meet), ij);
    if (d.is_unit_ideal(join)) {
      EXPECT_EQ(d.residue_norm(ij), d.residue_norm(i) * d.residue_norm(j));
    }
    // Factorization round trip, with every prime giving a residue field.
    PrimeFactorization f = d.factor(i, kCap);
    Ideal back = d.unit_ideal();
    for (const PrimePower& pp : f) {
      back = d.product(back, d.power(pp.prime, pp.exponent));
      if (d.residue_norm(pp.prime) <= 4096) {
        RingPtr r = QuotientRing::build(d, pp.prime);
        EXPECT_EQ(r->units().size(), r->size() - 1);
      }
    }
    EXPECT_EQ(back, i);
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = a + 1; b < f.size(); ++b) EXPECT_FALSE(f[a].prime == f[b].prime);
    // q + (6) = D forces Condition L.
    if (d.is_unit_ideal(d.sum(i, d.principal(d.from_int(6))))) {
      EXPECT_TRUE(d.condition_L(i, kCap).holds);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, AllKinds,
                         ::testing::Values("Z", "Fq[t] q=2", "Fq[t] q=3", "Fq[t] q=4",
                                           "Q(sqrt(-1))", "Q(sqrt(-2))", "Q(sqrt(-3))",
                                           "Q(sqrt(-5))", "Q(sqrt(-23))"));

TEST(CrtSelect, Examples) {
  Domain z = Domain::integers();
  EXPECT_EQ(z.crt_select({{::z(2), 1}, {::z(3), 0}}), Element(BigInt(2)));

  Domain f3 = Domain::parse("Fq[t] q=3");
  Element x = f3.crt_select({{f3.parse_ideal("(t)"), 2}, {f3.parse_ideal("(t+1)"), 1}});
  EXPECT_EQ(f3.principal(x), f3.parse_ideal("(t^3+t^2)"));

  Domain d2 = Domain::parse("Q(sqrt(-2))");
  Ideal p = d2.parse_ideal("(w)");
  Element y = d2.crt_select({{p, 3}});
  EXPECT_TRUE(d2.contains(d2.power(p, 3), y));
  EXPECT_FALSE(d2.contains(d2.power(p, 4), y));
  EXPECT_EQ(y, d2.parse_element("2*w"));

  EXPECT_THROW(z.crt_select({{::z(3), 1}, {::z(3), 2}}), PreconditionError);
}

TEST(ConditionL, Examples) {
  Domain z = Domain::integers();
  ConditionLReport r3 = z.condition_L(::z(3), kCap);
  EXPECT_FALSE(r3.holds);
  EXPECT_EQ(r3.failed_clause, "ii");
  ASSERT_EQ(r3.witnesses.size(), 1u);
  EXPECT_EQ(r3.witnesses[0], ::z(3));
  EXPECT_TRUE(z.condition_L(::z(9), kCap).holds);
  EXPECT_EQ(z.condition_L(::z(10), kCap).failed_clause, "i");

  Domain f2 = Domain::parse("Fq[t] q=2");
  ConditionLReport rt = f2.condition_L(f2.parse_ideal("(t)"), kCap);
  EXPECT_FALSE(rt.holds);
  EXPECT_EQ(rt.failed_clause, "i");

  // F3[t]/(t) has 3 elements and exponent 1; (t^2) is fine.
  Domain f3 = Domain::parse("Fq[t] q=3");
  EXPECT_EQ(f3.condition_L(f3.parse_ideal("(t)"), kCap).failed_clause, "ii");
  EXPECT_TRUE(f3.condition_L(f3.parse_ideal("(t^2)"), kCap).holds);
}

TEST(ResidueNorm, Examples) {
  EXPECT_EQ(Domain::integers().residue_norm(z(12)), 12);
  EXPECT_THROW(Domain::integers().residue_norm(z(0)), PreconditionError);
}

TEST(Elements, FormatParseRoundTrip) {
  for (const char* desc : {"Z", "Fq[t] q=9", "Q(sqrt(-7))", "Q(sqrt(-2))"}) {
    Domain d = Domain::parse(desc);
    for (const char* text : {"0", "1", "-3", "7"}) {
      Element x = d.parse_element(text);
      EXPECT_EQ(d.parse_element(d.format(x)), x) << desc << " " << text;
    }
  }
  Domain f9 = Domain::parse("Fq[t] q=9");
  Element x = f9.parse_element("2*t^3+u*t");
  EXPECT_EQ(f9.parse_element(f9.format(x)), x);
  Domain q = Domain::parse("Q(sqrt(-7))");
  Element w = q.parse_element("3-2*w");
  EXPECT_EQ(q.parse_element(q.format(w)), w);
  EXPECT_EQ(q.mul(q.variable(), q.variable()), q.parse_element("w-2"));
  EXPECT_THROW(Domain::integers().parse_element("t"), ParseError);
}
