#include <gtest/gtest.h>

#include "dmod/bernstein.hpp"
#include "dmod/dmodops.hpp"
#include "dmod/parse.hpp"
#include "gen.hpp"

using namespace dmod;

namespace {

std::vector<WeylOperator> L(const RingPtr& r, const char* s) { return parse_operator_list(r, s); }
PolyWithParam F(const RingPtr& r, const char* s) { return PolyWithParam(parse_operator(r, s)); }

// Monomials of degree <= k in nvars variables outside the ideal.
unsigned long count_standard(const MonomialGens& gens, std::size_t nvars, unsigned k) {
  std::vector<unsigned> e(nvars, 0);
  unsigned long n = 0;
  for (;;) {
    unsigned d = 0;
    for (auto v : e) d += v;
    if (d <= k) {
      bool in = false;
      for (const auto& g : gens) {
        bool div = true;
        for (std::size_t i = 0; i < nvars; ++i) div = div && g[i] <= e[i];
        in = in || div;
      }
      if (!in) ++n;
    }
    std::size_t i = 0;
    while (i < nvars && e[i] == k) e[i++] = 0;
    if (i == nvars) break;
    ++e[i];
  }
  return n;
}

Integer mult(const std::vector<WeylOperator>& I, const RingPtr& r) {
  return bernstein_dimension_multiplicity(I, r).multiplicity;
}

Integer localized_mult(const RingPtr& r, const char* f) {
  CyclicDMod K(r, r->n() == 1 ? L(r, "dx") : L(r, "dx, dy"));
  return mult(localize(K, F(r, f)).generator_annihilator, r);
}

}  // namespace

// ---------------------------------------------------------------- monomial ideals

TEST(HilbertMonomial, Examples) {
  EXPECT_EQ(hilbert_polynomial_monomial({}, 2), RationalUnivariate::from_roots({-1, -2}, "k").monic() *
                                                    RationalUnivariate::constant(Rational(1, 2), "k"));
  EXPECT_EQ(hilbert_polynomial_monomial({{1, 0}}, 2), RationalUnivariate({1, 1}, "k"));
  EXPECT_TRUE(hilbert_data_monomial({{0, 0}}, 2).zero_module());
  EXPECT_EQ(hilbert_data_monomial({{0, 0}}, 2).multiplicity, 0);
}

TEST(HilbertMonomial, StaircaseLeadingTerm) {
  // <y^l, x xi, y^(l-1) xi> in (x, y, xi, eta)
  for (unsigned l = 2; l <= 6; ++l) {
    MonomialGens g{{0, l, 0, 0}, {1, 0, 1, 0}, {0, l - 1, 1, 0}};
    auto h = hilbert_data_monomial(g, 4);
    EXPECT_EQ(h.dimension, 2);
    EXPECT_EQ(h.hilbert_polynomial.leading(), Rational(2 * l - 1, 2)) << l;
    EXPECT_EQ(h.multiplicity, 2 * l - 1);
  }
}

TEST(HilbertMonomialProperty, MatchesLatticeCount) {
  gen::OperatorGen g(7);
  for (int c = 0; c < 300; ++c) {
    const std::size_t nv = static_cast<std::size_t>(g.uniform(1, 4));
    MonomialGens gens;
    const int k = g.uniform(0, 4);
    for (int i = 0; i < k; ++i) {
      std::vector<unsigned> e(nv);
      for (auto& v : e) v = static_cast<unsigned>(g.uniform(0, 3));
      gens.push_back(e);
    }
    auto h = hilbert_data_monomial(gens, nv);
    for (unsigned t = h.threshold; t <= h.threshold + 5; ++t) {
      Rational expect(static_cast<long>(count_standard(gens, nv, t)));
      EXPECT_EQ(h.hilbert_polynomial.evaluate(t), expect) << c << " k=" << t;
    }
  }
}

// ---------------------------------------------------------------- D-modules

TEST(Bernstein, Examples) {
  auto r = RingContext::make({"x", "y"});
  auto k = bernstein_dimension_multiplicity(L(r, "dx, dy"), r);
  EXPECT_EQ(k.dimension, 2);
  EXPECT_EQ(k.multiplicity, 1);
  auto p = bernstein_dimension_multiplicity(L(r, "x*dx^2+dy"), r);
  EXPECT_EQ(p.dimension, 3);
  EXPECT_TRUE(bernstein_dimension_multiplicity(L(r, "1"), r).zero_module());
  EXPECT_EQ(bernstein_dimension_multiplicity({}, r).dimension, 4);
}

TEST(Bernstein, Holonomic) {
  auto r = RingContext::make({"x", "y"});
  EXPECT_TRUE(is_holonomic(L(r, "dx, dy"), r));
  EXPECT_FALSE(is_holonomic(L(r, "x*dx^2+dy"), r));
  EXPECT_TRUE(is_holonomic(L(r, "1"), r));
  EXPECT_FALSE(is_holonomic({}, r));
}

TEST(Bernstein, Additivity) {
  auto r = RingContext::make({"x"});
  EXPECT_EQ(mult(L(r, "x"), r) + mult(L(r, "dx"), r), 2);
  EXPECT_EQ(localized_mult(r, "x"), 2);
}

TEST(Bernstein, LocalizedPolynomialRings) {
  auto r1 = RingContext::make({"x"});
  EXPECT_EQ(localized_mult(r1, "x^2-1"), 3);
  EXPECT_EQ(localized_mult(r1, "x^3-x"), 4);
  auto r = RingContext::make({"x", "y"});
  for (auto [m, l] : {std::pair{2, 3}, {3, 3}, {2, 5}}) {
    std::string f = "x^" + std::to_string(m) + "+y^" + std::to_string(l);
    std::string f1 = f + "+1";
    EXPECT_EQ(localized_mult(r, f.c_str()), 2 * std::max(l, m)) << f;
    EXPECT_EQ(localized_mult(r, f1.c_str()), l * m + std::abs(l - m) + 1) << f1;
  }
}

TEST(Bernstein, CuspPowerOneSixth) {
  auto r = RingContext::make({"x", "y"});
  CyclicDMod M(r, L(r, "2*x*dx+3*y*dy-1, 2*y*dx+3*x^2*dy"));
  auto loc = localize(M, F(r, "x^3-y^2"));
  EXPECT_EQ(mult(M.ideal, r), 6);
  EXPECT_EQ(mult(loc.iota_annihilator, r), 5);
  EXPECT_EQ(mult(loc.generator_annihilator, r), 6);
  EXPECT_EQ(mult(*loc.h0.cyclic_annihilator, r), 1);
  EXPECT_EQ(mult(*loc.h1.cyclic_annihilator, r), 1);
}

TEST(BernsteinProperty, LocalizationMultiplicityEqualsSpecialization) {
  // mult M[f^-1] = mult D/(Ann(u (x) f^s) at s = 0), and the multi-generator
  // presentation of M[f^-1] has the same multiplicity.
  struct Case {
    std::vector<std::string> xs;
    const char* ideal;
    const char* f;
  };
  const std::vector<Case> cases{{{"x"}, "x*dx", "x"},
                                {{"x", "y"}, "2*x*dx+3*y*dy-1, 2*y*dx+3*x^2*dy", "x^3-y^2"},
                                {{"x", "y"}, "x*dx+1, y*dy+1, x*y", "x"},
                                {{"x", "y"}, "dx, dy", "x*y*(x+y)"},
                                {{"x"}, "x*dx-1/3", "x^2-x"}};
  for (const auto& c : cases) {
    auto r = RingContext::make(c.xs);
    CyclicDMod M(r, L(r, c.ideal));
    auto f = F(r, c.f);
    auto loc = localize(M, f);
    auto ann = ann_fs(M, f);
    std::vector<WeylOperator> at0;
    for (const auto& g : ann.generators) at0.push_back(substitute_param(g, "s", 0));
    const Integer m = mult(loc.generator_annihilator, r);
    EXPECT_EQ(mult(at0, r), m) << c.f;
    EXPECT_EQ(bernstein_dimension_multiplicity(loc.localized.relations, loc.localized.rank, r).multiplicity, m)
        << c.f;
  }
}
