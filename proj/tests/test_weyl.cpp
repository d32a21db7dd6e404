#include <gtest/gtest.h>

#include "dmod/kernels.hpp"
#include "dmod/parse.hpp"
#include "dmod/weyl.hpp"
#include "gen.hpp"

using namespace dmod;

namespace {

RingPtr R1() { return RingContext::make({"x"}); }
RingPtr R2() { return RingContext::make({"x", "y"}); }
WeylOperator P(const RingPtr& r, const char* s) { return parse_operator(r, s); }

}  // namespace

TEST(Weyl, Add) {
  auto r = R1();
  EXPECT_TRUE((P(r, "x*dx") + P(r, "-x*dx")).is_zero());
  EXPECT_EQ(add(P(r, "x*dx+1"), P(r, "x*dx")).str(), "2*x*dx+1");
  auto r2 = R2();
  EXPECT_EQ((P(r2, "dx") + P(r2, "dy")).str(), "dx+dy");
}

TEST(Weyl, RingMismatch) { EXPECT_THROW(P(R1(), "x") + P(R2(), "x"), RingError); }

TEST(Weyl, DefiningRelation) {
  auto r = R1();
  EXPECT_EQ(normal_product(P(r, "dx"), P(r, "x")), P(r, "x*dx+1"));
}

TEST(Weyl, LeibnizSquare) {
  auto r = R1();
  EXPECT_EQ(P(r, "dx^2") * P(r, "x^2"), P(r, "x^2*dx^2+4*x*dx+2"));
  EXPECT_EQ(P(r, "x*dx") * P(r, "x*dx"), P(r, "x^2*dx^2+x*dx"));
}

TEST(Weyl, LeibnizAgainstAction) {
  // both sides act identically on 1, x, x^2, x^3
  auto r = R1();
  auto lhs = P(r, "dx^2") * P(r, "x^2");
  for (int k = 0; k <= 3; ++k) {
    PolyWithParam g(power(P(r, "x"), static_cast<unsigned>(k)));
    auto direct = apply_to_poly(P(r, "dx^2"), apply_to_poly(P(r, "x^2"), g));
    EXPECT_EQ(apply_to_poly(lhs, g), direct);
  }
}

TEST(Weyl, LeibnizCoefficient) {
  EXPECT_EQ(leibniz_coefficient(2, 2, 1), 4);
  EXPECT_EQ(leibniz_coefficient(2, 2, 2), 2);
  EXPECT_EQ(leibniz_coefficient(40, 40, 1), 1600);
  EXPECT_EQ(leibniz_coefficient(3, 1, 2), 0);
}

TEST(Weyl, ApplyToPoly) {
  auto r = R1();
  EXPECT_EQ(apply_to_poly(P(r, "dx"), PolyWithParam(P(r, "x^3"))).op(), P(r, "3*x^2"));
  for (unsigned k = 0; k < 6; ++k) {
    PolyWithParam g(power(P(r, "x"), k));
    EXPECT_EQ(apply_to_poly(P(r, "x*dx"), g).op(), Rational(k) * g.op());
  }
  EXPECT_EQ(apply_to_poly(P(r, "dx^2") * P(r, "x^2"), PolyWithParam::constant(r, 1)).op(), P(r, "2"));
}

TEST(Weyl, HomogenizedRelation) {
  auto r = RingContext::make({"x"}, false, {}, true);
  EXPECT_EQ(P(r, "dx") * P(r, "x"), P(r, "x*dx+h^2"));
}

TEST(Weyl, Tau) {
  auto r = R1();
  PolyWithParam f(P(r, "x"));
  auto y = r->with_t();
  EXPECT_EQ(tau(P(r, "x*dx"), f), P(y, "x*dx-x*dt*t^2"));
  EXPECT_EQ(tau(P(r, "7/2"), f), P(y, "7/2"));
  auto r2 = R2();
  PolyWithParam g(P(r2, "x^3-y^2"));
  auto y2 = r2->with_t();
  auto expect = P(y2, "(dx-3*x^2*dt*t^2)*(dy+2*y*dt*t^2)");
  EXPECT_EQ(tau(P(r2, "dx*dy"), g), expect);
}

TEST(Weyl, TauPrime) {
  auto r = R1();
  auto y = r->with_t();
  EXPECT_EQ(tau_prime(P(r, "dx"), PolyWithParam(P(r, "x"))), P(y, "dx+dt"));
  auto r2 = R2();
  auto y2 = r2->with_t();
  EXPECT_EQ(tau_prime(P(r2, "x*dx^2+dy"), PolyWithParam(P(r2, "x"))), P(y2, "x*(dx+dt)^2+dy"));
  EXPECT_EQ(tau_prime(P(r2, "-3"), PolyWithParam(P(r2, "x"))), P(y2, "-3"));
}

TEST(Weyl, Fourier) {
  auto y = R1()->with_t();
  EXPECT_EQ(fourier_t(P(y, "t*dt")), P(y, "-t*dt-1"));
  EXPECT_EQ(fourier_t(P(y, "t*(x^2+1)-1")), P(y, "(x^2+1)*dt-1"));
}

TEST(Weyl, ThetaToS) {
  auto y = R1()->with_t();
  auto s = R1()->with_params({"s"});
  EXPECT_EQ(theta_to_s(P(y, "t*dt")), P(s, "-s-1"));
  EXPECT_EQ(theta_to_s(P(y, "dt*t")), P(s, "-s"));
  EXPECT_EQ(theta_to_s(P(y, "t^2*dt^2")), P(s, "(-s-1)*(-s-2)"));
  EXPECT_THROW(theta_to_s(P(y, "t")), RingError);
}

TEST(Weyl, SubstituteParam) {
  auto s = R1()->with_params({"s"});
  auto r = R1();
  EXPECT_EQ(substitute_param(P(s, "x*dx-s^2+s"), "s", Rational(1, 2)), P(r, "x*dx-1/4+1/2"));
}

TEST(Weyl, DivideExact) {
  auto r = R2();
  PolyWithParam f(P(r, "x^3-y^2"));
  PolyWithParam g(P(r, "(x^3-y^2)*(x+y)^2"));
  auto q = g.divide_exact(f);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->op(), P(r, "(x+y)^2"));
  EXPECT_FALSE(PolyWithParam(P(r, "x^3+1")).divide_exact(f).has_value());
}

TEST(Weyl, HomogenizeRoundTrip) {
  auto r = R2();
  auto h = r->with_homogenization(true);
  auto p = P(r, "x^2*dx+y-3");
  auto ph = homogenize(p, h);
  EXPECT_EQ(ph, P(h, "x^2*dx+y*h^2-3*h^3"));
  EXPECT_EQ(dehomogenize(ph, r), p);
}

TEST(Weyl, Printing) {
  auto r = R2()->with_t();
  EXPECT_EQ(P(r, "3/2*x*dx^2 - t*dt + 1").str(), "3/2*x*dx^2-t*dt+1");
  EXPECT_EQ(P(r, "0").str(), "0");
  EXPECT_EQ(P(r, "-y").str(), "-y");
}

// Property suites.

TEST(WeylProperty, DefiningRelations) {
  auto r = RingContext::make({"x", "y", "z"}, true, {"s"});
  for (std::size_t i = 0; i < r->pairs(); ++i) {
    auto xi = WeylOperator::variable(r, r->var_name(r->x_index(i)));
    auto di = WeylOperator::variable(r, r->var_name(r->d_index(i)));
    EXPECT_EQ(di * xi - xi * di, WeylOperator::constant(r, 1));
    for (std::size_t j = 0; j < r->nvars(); ++j) {
      if (j == r->x_index(i) || j == r->d_index(i)) continue;
      auto v = WeylOperator::variable(r, r->var_name(j));
      EXPECT_EQ(di * v, v * di);
      EXPECT_EQ(xi * v, v * xi);
    }
  }
}

TEST(WeylProperty, AssociativeAndDistributive) {
  gen::OperatorGen gen(7);
  auto r = RingContext::make({"x", "y"}, true, {"s"});
  for (int k = 0; k < 1000; ++k) {
    auto a = gen.op(r), b = gen.op(r), c = gen.op(r);
    ASSERT_EQ((a * b) * c, a * (b * c)) << a << " | " << b << " | " << c;
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) * c, a * c + b * c);
  }
}

TEST(WeylProperty, HomogenizedAssociative) {
  gen::OperatorGen gen(11);
  auto r = RingContext::make({"x", "y"}, false, {}, true);
  for (int k = 0; k < 300; ++k) {
    auto a = gen.op(r), b = gen.op(r), c = gen.op(r);
    ASSERT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(WeylProperty, ActionCompatible) {
  gen::OperatorGen gen(13);
  auto r = RingContext::make({"x", "y"}, false, {"s"});
  for (int k = 0; k < 1000; ++k) {
    auto a = gen.op(r), b = gen.op(r);
    auto g = gen.poly(r);
    ASSERT_EQ(apply_to_poly(a * b, g), apply_to_poly(a, apply_to_poly(b, g)));
  }
}

TEST(WeylProperty, TauHomomorphism) {
  gen::OperatorGen gen(17);
  auto r = R2();
  for (int k = 0; k < 200; ++k) {
    auto a = gen.op(r, 2, 2), b = gen.op(r, 2, 2);
    auto f = gen.poly(r, 2, 2);
    ASSERT_EQ(tau(a * b, f), tau(a, f) * tau(b, f));
    ASSERT_EQ(tau_prime(a * b, f), tau_prime(a, f) * tau_prime(b, f));
  }
}

TEST(WeylProperty, FourierTwiceNegatesT) {
  gen::OperatorGen gen(19);
  auto r = R2()->with_t();
  for (int k = 0; k < 300; ++k) {
    auto a = gen.op(r), b = gen.op(r);
    auto twice = fourier_t(fourier_t(a));
    std::vector<WeylOperator::Term> neg;
    for (auto [m, c] : a.terms()) {
      unsigned e = m.e[r->x_index(r->t_pair())] + m.e[r->d_index(r->t_pair())];
      neg.emplace_back(m, e % 2 ? Rational(-c) : c);
    }
    ASSERT_EQ(twice, WeylOperator::from_terms(r, neg));
    ASSERT_EQ(fourier_t(a * b), fourier_t(a) * fourier_t(b));
  }
}

TEST(WeylProperty, ThetaRoundTrip) {
  gen::OperatorGen gen(23);
  auto r = R2()->with_t();
  const auto ts = r->x_index(r->t_pair()), ds = r->d_index(r->t_pair());
  for (int k = 0; k < 500; ++k) {
    auto a = gen.op(r, 4, 3);
    std::vector<WeylOperator::Term> w0;
    for (auto [m, c] : a.terms()) {
      m.e[ds] = m.e[ts];
      w0.emplace_back(m, c);
    }
    auto p = WeylOperator::from_terms(r, w0);
    ASSERT_EQ(s_to_theta(theta_to_s(p)), p);
  }
}

TEST(Kernels, ParallelMatchesSerial) {
  gen::OperatorGen gen(29);
  auto r = RingContext::make({"x", "y"}, true);
  for (int k = 0; k < 50; ++k) {
    auto a = gen.op(r, 12, 3), b = gen.op(r, 12, 3);
    ASSERT_EQ(kernels::weyl_product_parallel(a, b), kernels::weyl_product_serial(a, b));
  }
  std::vector<WeylOperator> batch;
  for (int k = 0; k < 20; ++k) batch.push_back(gen.op(r, 6, 2));
  auto f = gen.op(r, 6, 2);
  EXPECT_EQ(kernels::left_multiply_parallel(f, batch), kernels::left_multiply_serial(f, batch));
}

TEST(Parse, Errors) {
  auto r = R1();
  EXPECT_THROW(parse_operator(r, "x+"), ParseError);
  EXPECT_THROW(parse_operator(r, "y"), ParseError);
  EXPECT_THROW(parse_operator(r, "x/dx"), ParseError);
  EXPECT_THROW(parse_operator(r, "(x"), ParseError);
  EXPECT_EQ(parse_operator_list(r, "x*dx, (x+1)*dx").size(), 2U);
  EXPECT_EQ(parse_rational("-7/6"), Rational(-7, 6));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
}

TEST(Parse, NormalOrdersOnRead) {
  auto r = R1();
  EXPECT_EQ(parse_operator(r, "dx*x").str(), "x*dx+1");
  EXPECT_EQ(parse_operator(r, "3/2*x*dx^2/3").str(), "1/2*x*dx^2");
}
