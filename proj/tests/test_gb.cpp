#include <gtest/gtest.h>

#include <map>

#include "dmod/gb.hpp"
#include "dmod/parse.hpp"
#include "gen.hpp"

using namespace dmod;

namespace {

WeylOperator P(const RingPtr& r, const char* s) { return parse_operator(r, s); }
std::vector<WeylOperator> L(const RingPtr& r, const char* s) { return parse_operator_list(r, s); }

ModuleElement V(const RingPtr& r, std::initializer_list<const char*> comps) {
  ModuleElement v;
  for (auto c : comps) v.push_back(P(r, c));
  return v;
}

// Heaviside relations on D_x^2 with generators [u], [t u].
std::vector<ModuleElement> heaviside_relations(const RingPtr& r) {
  return {V(r, {"-1", "x"}), V(r, {"dx", "0"}), V(r, {"1", "x^2*dx"}), V(r, {"0", "x*dx+1"})};
}

}  // namespace

TEST(NormalForm, Basics) {
  auto r = RingContext::make({"x"});
  auto gb = buchberger(L(r, "x*dx"), TermOrder::degrevlex());
  EXPECT_TRUE(gb.normal_form(P(r, "x*dx")).is_zero());
  EXPECT_EQ(gb.normal_form(P(r, "dx*x")), P(r, "1"));
  EXPECT_EQ(gb.normal_form(P(r, "3*dx*x+x")), P(r, "3+x"));
}

TEST(Buchberger, SingleGeneratorIsMonic) {
  auto r = RingContext::make({"x", "y"});
  auto gb = buchberger(L(r, "3*x*dx^2+6*dy"), TermOrder::degrevlex());
  ASSERT_EQ(gb.size(), 1U);
  EXPECT_EQ(gb.elements()[0][0], P(r, "x*dx^2+2*dy"));
}

TEST(Buchberger, HeavisideWeightOrder) {
  auto y = RingContext::make({"x"}, true);
  auto gens = L(y, "t*x-1, dx-dt*t^2");
  // slots x, t, dx, dt
  auto gb = buchberger(gens, TermOrder::weighted({0, 1, 0, -1}));
  auto paper = L(y, "t*x-1, x^2*dx-dt, dt*t-x*dx, dt*t^2-dx");
  EXPECT_TRUE(ideals_equal(gb.ideal_elements(), paper));
  EXPECT_TRUE(ideals_equal(gens, paper));
  EXPECT_TRUE(gb.verify_spairs());
  for (const auto& p : paper) EXPECT_TRUE(gb.contains(p)) << p;
}

TEST(Buchberger, QuasiHomogeneousTripleIsBasis) {
  auto r = RingContext::make({"x", "y"});
  for (auto [m, l] : {std::pair{2, 3}, {2, 5}, {3, 4}}) {
    std::string f = "x^" + std::to_string(m) + "+y^" + std::to_string(l);
    std::string E = std::to_string(l) + "*x*dx+" + std::to_string(m) + "*y*dy+" + std::to_string(m * l);
    std::string Pp = std::to_string(l) + "*y^" + std::to_string(l - 1) + "*dx-" + std::to_string(m) + "*x^" +
                     std::to_string(m - 1) + "*dy";
    auto gens = parse_operator_list(r, f + "," + E + "," + Pp);
    auto gb = buchberger(gens, TermOrder::degrevlex());
    ASSERT_EQ(gb.size(), 3U) << f;
    auto self = buchberger(gens, TermOrder::degrevlex());
    for (const auto& g : gens) {
      Monomial lm = g.terms()[0].first;
      bool found = false;
      for (std::size_t i = 0; i < gb.size(); ++i) found = found || gb.leading(i).second == lm;
      EXPECT_TRUE(found) << g;
    }
  }
}

TEST(Eliminate, WeylWithParameter) {
  auto r = RingContext::make({"x"}, false, {"s"});
  auto out = eliminate(L(r, "x*dx-s, x"), {r->x_index(0), r->d_index(0)});
  ASSERT_EQ(out.size(), 1U);
  EXPECT_EQ(out[0], P(r, "s+1"));
  // s + 1 = dx*x - (x*dx - s)
  EXPECT_EQ(P(r, "dx") * P(r, "x") - P(r, "x*dx-s"), P(r, "s+1"));
}

TEST(Eliminate, NothingFree) {
  auto y = RingContext::make({"x"}, true);
  auto out = eliminate(L(y, "t-x"), {y->x_index(1), y->d_index(1)});
  EXPECT_TRUE(out.empty());
}

TEST(Eliminate, Commutative) {
  auto r = RingContext::make({"x", "y"});
  auto out = eliminate(L(r, "x-y, y^2"), {r->x_index(1)});
  ASSERT_EQ(out.size(), 1U);
  EXPECT_EQ(out[0], P(r, "x^2"));
}

TEST(Kernel, HeavisideAnnihilators) {
  auto r = RingContext::make({"x"});
  auto N = heaviside_relations(r);
  EXPECT_TRUE(ideals_equal(kernel_of_cyclic_map(N, unit_vector(r, 2, 0)), L(r, "dx")));
  EXPECT_TRUE(ideals_equal(kernel_of_cyclic_map(N, unit_vector(r, 2, 1)), L(r, "x*dx+1")));
}

TEST(Kernel, WholeModule) {
  auto r = RingContext::make({"x"});
  std::vector<ModuleElement> N{unit_vector(r, 2, 0), unit_vector(r, 2, 1)};
  auto k = kernel_of_cyclic_map(N, V(r, {"x", "dx"}));
  EXPECT_TRUE(ideals_equal(k, L(r, "1")));
}

TEST(Syzygies, Examples) {
  auto r = RingContext::make({"x"});
  auto s = syzygies(L(r, "x, x"));
  ASSERT_FALSE(s.empty());
  EXPECT_TRUE(modules_equal(s, {V(r, {"1", "-1"})}, 2));

  auto gens = L(r, "dx, x*dx");
  auto s2 = syzygies(gens);
  ASSERT_FALSE(s2.empty());
  for (const auto& q : s2) EXPECT_TRUE((q[0] * gens[0] + q[1] * gens[1]).is_zero());
  // x*dx - x*(dx) = 0
  EXPECT_TRUE(buchberger(s2, 2, r, TermOrder::degrevlex()).contains(V(r, {"x", "-1"})));

  EXPECT_TRUE(syzygies(L(r, "x*dx^2+3")).empty());
}

TEST(Lift, Cofactors) {
  auto r = RingContext::make({"x"}, false, {"s"});
  auto gens = L(r, "x*dx-s, x");
  auto q = lift(P(r, "s+1"), gens);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ((*q)[0] * gens[0] + (*q)[1] * gens[1], P(r, "s+1"));
  EXPECT_FALSE(lift(P(r, "1"), gens).has_value());
}

TEST(Budget, Exceeded) {
  auto r = RingContext::make({"x", "y", "z"});
  Budget b;
  b.max_steps = 3;
  b.stage = "unit";
  try {
    (void)buchberger(L(r, "x^3*dy-z*dx^2+y, y^2*dz-x*dx, z^3*dx-y*dz+x"), TermOrder::degrevlex(), b);
    FAIL() << "expected budget exhaustion";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.stage(), "unit");
  }
}

TEST(Budget, CoefficientSize) {
  auto r = RingContext::make({"x", "y"});
  Budget b;
  b.max_coeff_bits = 256;
  EXPECT_THROW((void)buchberger(L(r, "-3/2*y^2*dx*dy^2-5/3*x*dy^2, -2*x*y*dx^2+4*y^2*dx"), TermOrder::degrevlex(), b),
               BudgetExceeded);
}

// Property suites. Random Weyl ideals occasionally have very large bases;
// such cases stop at a step budget and are counted.

namespace {
constexpr std::size_t kCaseSteps = 2000;
Budget case_budget() {
  Budget b;
  b.max_steps = kCaseSteps;
  b.max_coeff_bits = 4096;
  return b;
}
}  // namespace

TEST(GBProperty, SPairsAndMembership) {
  gen::OperatorGen g(31);
  auto r = RingContext::make({"x", "y"});
  int cases = 0, skipped = 0;
  for (int k = 0; k < 60; ++k) {
    std::vector<WeylOperator> gens;
    for (int i = 0; i < 2; ++i) {
      auto p = g.op(r, 2, 2);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    ++cases;
    try {
      auto gb = buchberger(gens, TermOrder::degrevlex(), case_budget());
      ASSERT_TRUE(gb.verify_spairs());
      for (const auto& p : gens) ASSERT_TRUE(gb.contains(p)) << p;
    } catch (const BudgetExceeded&) {
      ++skipped;
    }
  }
  EXPECT_LE(skipped * 10, cases);
}

TEST(GBProperty, DehomogenizationSound) {
  gen::OperatorGen g(37);
  auto y = RingContext::make({"x"}, true);
  int cases = 0, skipped = 0;
  for (int k = 0; k < 40; ++k) {
    std::vector<WeylOperator> gens;
    for (int i = 0; i < 2; ++i) {
      auto p = g.op(y, 3, 1);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    ++cases;
    try {
      auto gb = buchberger(gens, TermOrder::weighted({0, 1, 0, -1}), case_budget());
      ASSERT_TRUE(gb.verify_spairs());
      ASSERT_TRUE(ideals_equal(gb.ideal_elements(), gens, case_budget()));
    } catch (const BudgetExceeded&) {
      ++skipped;
    }
  }
  EXPECT_LE(skipped * 10, cases);
}

namespace {

// Truncated linear-algebra oracle: spans all m*g with deg(m*g) <= D in a
// commutative ring and returns the reduced rows free of the block slots.
std::vector<WeylOperator> truncated_elimination(const std::vector<WeylOperator>& gens,
                                                const std::vector<std::size_t>& block, unsigned D) {
  const auto& r = gens[0].ring();
  const std::size_t n = r->n();
  std::vector<Monomial> monos;
  std::vector<unsigned> e(n, 0);
  for (;;) {
    unsigned d = 0;
    for (auto v : e) d += v;
    if (d <= D) {
      Monomial m;
      for (std::size_t i = 0; i < n; ++i) m.e[i] = static_cast<std::uint16_t>(e[i]);
      monos.push_back(m);
    }
    std::size_t i = 0;
    while (i < n && e[i] == D) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  auto in_block = [&](const Monomial& m) {
    for (auto s : block)
      if (m.e[s]) return true;
    return false;
  };
  std::vector<std::map<std::vector<int>, Rational>> rows;
  auto key = [&](const Monomial& m) {
    std::vector<int> k{in_block(m) ? 0 : 1};
    for (std::size_t i = 0; i < n; ++i) k.push_back(m.e[i]);
    return k;
  };
  for (const auto& g : gens)
    for (const auto& m : monos) {
      auto p = WeylOperator::monomial(r, m) * g;
      if (p.degree() > static_cast<int>(D)) continue;
      std::map<std::vector<int>, Rational> row;
      for (const auto& [mm, c] : p.terms()) row[key(mm)] = c;
      rows.push_back(row);
    }
  // Gaussian elimination with block columns first
  std::vector<std::map<std::vector<int>, Rational>> echelon;
  for (auto row : rows) {
    for (const auto& piv : echelon) {
      auto it = row.find(piv.begin()->first);
      if (it == row.end()) continue;
      Rational f = it->second / piv.begin()->second;
      for (const auto& [k, c] : piv) {
        row[k] -= f * c;
        if (row[k] == 0) row.erase(k);
      }
    }
    if (row.empty()) continue;
    for (auto& piv : echelon) {
      auto it = piv.find(row.begin()->first);
      if (it == piv.end()) continue;
      Rational f = it->second / row.begin()->second;
      for (const auto& [k, c] : row) {
        piv[k] -= f * c;
        if (piv[k] == 0) piv.erase(k);
      }
    }
    echelon.push_back(row);
    std::sort(echelon.begin(), echelon.end(),
              [](const auto& a, const auto& b) { return a.begin()->first < b.begin()->first; });
  }
  std::vector<WeylOperator> out;
  for (const auto& row : echelon) {
    if (row.begin()->first[0] == 0) continue;
    std::vector<WeylOperator::Term> t;
    for (const auto& [k, c] : row) {
      Monomial m;
      for (std::size_t i = 0; i < n; ++i) m.e[i] = static_cast<std::uint16_t>(k[i + 1]);
      t.emplace_back(m, c);
    }
    out.push_back(WeylOperator::from_terms(r, t));
  }
  return out;
}

}  // namespace

TEST(GBProperty, CommutativeEliminationAgainstLinearAlgebra) {
  gen::OperatorGen g(41);
  auto r = RingContext::make({"x", "y", "z"});
  for (int k = 0; k < 25; ++k) {
    std::vector<WeylOperator> gens;
    for (int i = 0; i < 3; ++i) {
      auto p = g.poly(r, 2, 2).op();
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    std::vector<std::size_t> block{r->x_index(0)};
    auto elim = eliminate(gens, block);
    for (const auto& e : elim) {
      ASSERT_TRUE(e.free_of(r->x_index(0)));
      ASSERT_TRUE(ideal_contains(gens, e));
    }
    auto oracle = truncated_elimination(gens, block, 4);
    for (const auto& o : oracle) {
      if (elim.empty()) {
        ASSERT_TRUE(o.is_zero());
        continue;
      }
      ASSERT_TRUE(ideal_contains(elim, o)) << o;
    }
  }
}

TEST(GBProperty, KernelMembership) {
  gen::OperatorGen g(43);
  auto r = RingContext::make({"x"});
  for (int k = 0; k < 30; ++k) {
    std::vector<ModuleElement> N;
    for (int i = 0; i < 2; ++i) N.push_back({g.op(r, 2, 2), g.op(r, 2, 2)});
    ModuleElement v{g.op(r, 2, 1), g.op(r, 2, 1)};
    if (is_zero(v)) continue;
    bool any = false;
    for (const auto& n : N) any = any || !is_zero(n);
    if (!any) continue;
    auto K = kernel_of_cyclic_map(N, v);
    auto gbN = buchberger(N, 2, r, TermOrder::degrevlex());
    for (const auto& p : K) ASSERT_TRUE(gbN.contains(ModuleElement{p * v[0], p * v[1]}));
  }
}

TEST(GBProperty, SyzygiesVanish) {
  gen::OperatorGen g(47);
  auto r = RingContext::make({"x", "y"});
  for (int k = 0; k < 30; ++k) {
    std::vector<WeylOperator> gens;
    for (int i = 0; i < 3; ++i) {
      auto p = g.op(r, 2, 1);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.size() < 2) continue;
    for (const auto& q : syzygies(gens)) {
      WeylOperator s(r);
      for (std::size_t i = 0; i < gens.size(); ++i) s += q[i] * gens[i];
      ASSERT_TRUE(s.is_zero());
    }
  }
}
