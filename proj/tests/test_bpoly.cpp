#include <gtest/gtest.h>

#include <algorithm>

#include "dmod/bpoly.hpp"
#include "gen.hpp"

using namespace dmod;

namespace {

Rational Q(const char* s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

RationalUnivariate U(std::vector<Rational> c) { return RationalUnivariate(std::move(c)); }

RationalUnivariate from_factors(const std::vector<std::pair<const char*, unsigned>>& f) {
  std::vector<Rational> roots;
  for (const auto& [r, m] : f)
    for (unsigned k = 0; k < m; ++k) roots.push_back(Q(r));
  return RationalUnivariate::from_roots(roots);
}

// max k in [1, bound] with b(lambda - k) = 0, by direct evaluation
unsigned scan_generator_level(const RationalUnivariate& b, const Rational& lambda, unsigned bound) {
  unsigned best = 0;
  for (unsigned k = 1; k <= bound; ++k)
    if (b.evaluate(lambda - k) == 0) best = k;
  return best;
}

int scan_integration_level(const RationalUnivariate& b, int bound) {
  int best = -1;
  for (int j = 0; j <= bound; ++j)
    if (b.evaluate(Rational(-j)) == 0) best = j;
  return best;
}

unsigned root_bound(const RationalUnivariate& b) {
  Rational m = 0;
  auto mb = b.monic();
  for (const auto& c : mb.coefficients()) m = std::max(m, Rational(abs(c)));
  return static_cast<unsigned>(mpz_class(m.get_num() / m.get_den()).get_ui()) + 2;
}

}  // namespace

TEST(RationalRoots, Examples) {
  auto b = from_factors({{"0", 1}, {"-1", 1}});
  EXPECT_EQ(rational_roots(b), (std::vector<RationalRoot>{{Q("0"), 1}, {Q("-1"), 1}}));

  auto l16 = from_factors({{"-1", 1}, {"-5/6", 1}, {"-7/6", 1}});
  EXPECT_EQ(rational_roots(l16), (std::vector<RationalRoot>{{Q("-1"), 1}, {Q("-5/6"), 1}, {Q("-7/6"), 1}}));

  auto appell = from_factors({{"-1", 3}, {"-2", 2}, {"-2/3", 2}, {"-4/3", 2}, {"-5/3", 1}});
  EXPECT_EQ(rational_roots(appell), (std::vector<RationalRoot>{
                                        {Q("-1"), 3}, {Q("-2"), 2}, {Q("-2/3"), 2}, {Q("-4/3"), 2}, {Q("-5/3"), 1}}));
  EXPECT_EQ(appell.factored(), "(s+1)^3*(s+2)^2*(s+2/3)^2*(s+4/3)^2*(s+5/3)");
}

TEST(RationalRoots, ZeroPolynomial) {
  EXPECT_THROW((void)rational_roots(RationalUnivariate()), std::domain_error);
}

TEST(RationalRoots, LargePrimeConstantTerm) {
  // roots with a large prime numerator
  auto b = from_factors({{"-1000000007/3", 1}, {"2", 1}});
  EXPECT_EQ(rational_roots(b), (std::vector<RationalRoot>{{Q("2"), 1}, {Q("-1000000007/3"), 1}}));
}

TEST(Factored, Printing) {
  EXPECT_EQ(from_factors({{"0", 1}, {"-1", 1}}).factored(), "s*(s+1)");
  EXPECT_EQ(from_factors({{"1", 1}}).factored(), "(s-1)");
  auto p = from_factors({{"-1", 1}}) * U({2, 0, 1});
  EXPECT_EQ(p.factored(), "(s+1)*(s^2+2)");
  EXPECT_EQ((Rational(3) * p).factored(), "3*(s+1)*(s^2+2)");
  EXPECT_EQ(RationalUnivariate::constant(1).factored(), "1");
  EXPECT_EQ(U({2, 3, 1}).str(), "s^2+3*s+2");
  EXPECT_EQ(U({Q("-1/2"), -1}).str(), "-s-1/2");
}

TEST(GeneratorLevel, Examples) {
  EXPECT_EQ(generator_level(from_factors({{"-1", 1}, {"-2", 1}}), 0), 2U);
  EXPECT_EQ(generator_level(from_factors({{"-1", 1}}), 0), 1U);
  // (s+1)(s+4/3)(s+7/6) at 1/6: 1/6 - k is never -1, -4/3 or -7/6
  auto b3 = from_factors({{"-1", 1}, {"-4/3", 1}, {"-7/6", 1}});
  EXPECT_EQ(generator_level(b3, Q("1/6")), 0U);
  EXPECT_EQ(scan_generator_level(b3, Q("1/6"), 20), 0U);
  // with the root -5/6 the level is 1
  auto l16 = from_factors({{"-1", 1}, {"-5/6", 1}, {"-7/6", 1}});
  EXPECT_EQ(generator_level(l16, Q("1/6")), 1U);
  EXPECT_EQ(generator_level(RationalUnivariate::constant(1), 0), 0U);
}

TEST(IntegrationLevel, Examples) {
  EXPECT_EQ(integration_level(from_factors({{"0", 1}, {"-1", 1}})), 1);
  EXPECT_EQ(integration_level(from_factors({{"0", 1}})), 0);
  EXPECT_EQ(integration_level(from_factors({{"5", 1}, {"-1/2", 1}})), -1);
  EXPECT_EQ(integration_level(from_factors({{"-5", 1}, {"-1/2", 1}})), 5);
  EXPECT_EQ(integration_level(from_factors({{"3", 1}})), -1);
}

TEST(Plumbing, Examples) {
  EXPECT_EQ(gcd(U({-1, 0, 1}), U({-1, 1})), U({-1, 1}));
  EXPECT_EQ(from_factors({{"0", 1}, {"-1", 1}}).compose_shift(-1), from_factors({{"1", 1}, {"0", 1}}));
  EXPECT_EQ(from_factors({{"-1", 1}, {"-2", 1}}).evaluate(-2), 0);
  EXPECT_EQ(squarefree_part(from_factors({{"-1", 3}, {"2", 2}})), from_factors({{"-1", 1}, {"2", 1}}));
  EXPECT_THROW((void)U({1, 1}).divmod(RationalUnivariate()), std::domain_error);
  EXPECT_EQ(gcd(RationalUnivariate(), RationalUnivariate()), RationalUnivariate());
  EXPECT_EQ(U({1, 2, 3}).reflect(), U({1, -2, 3}));
}

TEST(BpolyProperty, RootsRecoveredAndVerified) {
  gen::OperatorGen g(53);
  for (int k = 0; k < 300; ++k) {
    std::vector<RationalRoot> expect;
    RationalUnivariate b = RationalUnivariate::constant(1);
    const int nroots = g.uniform(0, 4);
    for (int i = 0; i < nroots; ++i) {
      Rational r(g.uniform(-12, 12), g.uniform(1, 6));
      r.canonicalize();
      const auto m = static_cast<unsigned>(g.uniform(1, 3));
      for (unsigned j = 0; j < m; ++j) b = b * RationalUnivariate::linear(r);
      auto it = std::find_if(expect.begin(), expect.end(), [&](const auto& e) { return e.value == r; });
      if (it == expect.end())
        expect.push_back({r, m});
      else
        it->multiplicity += m;
    }
    // a factor without real roots
    if (g.uniform(0, 1)) b = b * U({Rational(g.uniform(1, 9)), Rational(g.uniform(-1, 1)), 1});
    b = Rational(g.uniform(1, 7), g.uniform(1, 5)) * b;
    auto roots = rational_roots(b);
    std::sort(expect.begin(), expect.end(), [](const auto& a, const auto& c) {
      int d = cmp(a.value.get_den(), c.value.get_den());
      return d != 0 ? d < 0 : a.value > c.value;
    });
    ASSERT_EQ(roots, expect) << b;
    for (const auto& r : roots) ASSERT_EQ(b.evaluate(r.value), 0);
    auto rest = rational_free_part(b);
    ASSERT_TRUE(rational_roots(rest).empty());
    ASSERT_LE(rest.degree(), 2);
    if (rest.degree() == 2) {
      // positive discriminant-free factor: no real roots at all
      Rational disc = rest.coeff(1) * rest.coeff(1) - 4 * rest.coeff(0);
      ASSERT_LT(disc, 0);
    }
  }
}

TEST(BpolyProperty, LevelsAgreeWithScan) {
  gen::OperatorGen g(59);
  for (int k = 0; k < 300; ++k) {
    std::vector<Rational> roots;
    const int n = g.uniform(1, 4);
    for (int i = 0; i < n; ++i) {
      Rational r(g.uniform(-15, 3), g.uniform(1, 4));
      r.canonicalize();
      roots.push_back(r);
    }
    auto b = RationalUnivariate::from_roots(roots);
    Rational lambda(g.uniform(-6, 6), g.uniform(1, 4));
    lambda.canonicalize();
    const unsigned bound = root_bound(b) + static_cast<unsigned>(Integer(abs(lambda.get_num())).get_ui()) + 2;
    ASSERT_EQ(generator_level(b, lambda), scan_generator_level(b, lambda, bound)) << b << " at " << lambda;
    ASSERT_EQ(integration_level(b), scan_integration_level(b, static_cast<int>(bound))) << b;
  }
}

TEST(BpolyProperty, ShiftAndGcd) {
  gen::OperatorGen g(61);
  for (int k = 0; k < 200; ++k) {
    std::vector<Rational> c;
    for (int i = g.uniform(1, 5); i > 0; --i) c.emplace_back(g.uniform(-9, 9), g.uniform(1, 4));
    RationalUnivariate p(c);
    if (p.is_zero()) continue;
    Rational a(g.uniform(-5, 5), g.uniform(1, 3));
    a.canonicalize();
    auto q = p.compose_shift(a);
    for (int x = -3; x <= 3; ++x) ASSERT_EQ(q.evaluate(Rational(x)), p.evaluate(Rational(x) + a));
    ASSERT_EQ(q.compose_shift(-a), p);
    auto d = U({Rational(g.uniform(-4, 4)), 1});
    auto gg = gcd(p * d, q * d);
    ASSERT_TRUE((gg.divmod(d.monic()).second).is_zero());
    ASSERT_TRUE(((p * d).divmod(gg).second).is_zero());
  }
}
