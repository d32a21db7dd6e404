#include "dmod/dmodops.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>

#include "dmod/bernstein.hpp"

namespace dmod {

namespace {

void require_base_ring(const RingPtr& r, const char* what) {
  if (!r) throw RingError(std::string(what) + ": null ring");
  if (r->has_t() || r->homogenized() || !r->params().empty())
    throw RingError(std::string(what) + ": expected a plain Weyl algebra D_X");
}

void require_nonconstant(const PolyWithParam& f) {
  if (f.is_zero() || f.is_constant()) throw std::invalid_argument("f must be a non-constant polynomial");
}

std::vector<std::size_t> base_slots(const RingContext& r) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < r.n(); ++i) {
    s.push_back(r.x_index(i));
    s.push_back(r.d_index(i));
  }
  return s;
}

std::vector<int> t_weights(const RingContext& r, int a) {
  std::vector<int> w(r.nvars(), 0);
  w[r.x_index(r.t_pair())] = a;
  w[r.d_index(r.t_pair())] = -a;
  return w;
}

long max_weight(const WeylOperator& p, const std::vector<int>& w) {
  long best = 0;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    long v = weight_of(m, w);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

WeylOperator initial_form(const WeylOperator& p, const std::vector<int>& w) {
  const long top = max_weight(p, w);
  std::vector<WeylOperator::Term> out;
  for (const auto& t : p.terms())
    if (weight_of(t.first, w) == top) out.push_back(t);
  return WeylOperator::from_terms(p.ring(), std::move(out));
}

// Left multiplication bringing a homogeneous element of weight m to weight 0
// for the weight t:a, dt:-a.
WeylOperator to_weight_zero(const WeylOperator& g, long m, int a) {
  if (m == 0) return g;
  const auto& ring = g.ring();
  const char* var = (m * a > 0) ? "dt" : "t";
  return power(WeylOperator::variable(ring, var), static_cast<unsigned>(m > 0 ? m : -m)) * g;
}

WeylOperator monic(const WeylOperator& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.terms().front().second);
}

RationalUnivariate univariate_gcd(const std::vector<WeylOperator>& polys) {
  RationalUnivariate g;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    const auto slot = *p.ring()->param_slot("s");
    g = gcd(g, to_univariate(p, slot));
  }
  return g;
}

// Intersection of the D_X[s]-ideal with K[s], as a monic polynomial; zero when
// the intersection is zero.
// Degree bound for the linear-algebra search before falling back to elimination.
constexpr unsigned kMaxSDegree = 64;

Rational coefficient_at(const WeylOperator& p, const Monomial& m) {
  const auto& t = p.terms();
  auto it = std::lower_bound(t.begin(), t.end(), m,
                             [](const WeylOperator::Term& a, const Monomial& b) { return canonical_greater(a.first, b); });
  return it != t.end() && !canonical_greater(m, it->first) ? it->second : Rational(0);
}

// First linear dependence among NF(1), NF(s), NF(s^2), ... modulo a degrevlex
// basis; empty when there is none up to kMaxSDegree.
std::optional<RationalUnivariate> s_minimal_polynomial(const std::vector<WeylOperator>& gens, const Budget& budget) {
  const RingPtr& r = gens.front().ring();
  auto gb = buchberger(gens, TermOrder::degrevlex(), budget);
  struct Row {
    Monomial pivot;
    WeylOperator v;
    std::vector<Rational> comb;
  };
  std::vector<Row> rows;
  const auto s = WeylOperator::variable(r, "s");
  WeylOperator power_nf = gb.normal_form(WeylOperator::constant(r, 1));
  for (unsigned k = 0; k <= kMaxSDegree; ++k) {
    if (k > 0) power_nf = gb.normal_form(s * power_nf);
    if (budget.deadline && std::chrono::steady_clock::now() > *budget.deadline) throw BudgetExceeded(budget.stage);
    WeylOperator w = power_nf;
    std::vector<Rational> comb(k + 1);
    comb[k] = 1;
    for (const auto& row : rows) {
      const Rational a = coefficient_at(w, row.pivot);
      if (a == 0) continue;
      w -= a * row.v;
      for (std::size_t i = 0; i < row.comb.size(); ++i) comb[i] -= a * row.comb[i];
    }
    if (w.is_zero()) return RationalUnivariate(std::move(comb)).monic();
    const Rational lead = Rational(1) / w.terms().front().second;
    Monomial pivot = w.terms().front().first;
    for (auto& c : comb) c *= lead;
    rows.push_back({pivot, w * lead, std::move(comb)});
  }
  return std::nullopt;
}

RationalUnivariate eliminate_to_s(const std::vector<WeylOperator>& gens, const Budget& budget) {
  if (gens.empty()) return RationalUnivariate();
  const RingPtr& r = gens.front().ring();
  if (auto b = s_minimal_polynomial(gens, budget)) return *b;
  return univariate_gcd(eliminate(gens, base_slots(*r), budget));
}

// p(s), s = -dt t, generating in_w(J) intersected with K[dt t] for the
// weight t:a, dt:-a, from a Groebner basis of J for that weight.
RationalUnivariate indicial_polynomial(const GrobnerBasis& gb, int a, const Budget& budget) {
  const RingPtr& y = gb.ring();
  const auto w = t_weights(*y, a);
  std::vector<WeylOperator> forms;
  for (const auto& g : gb.ideal_elements()) {
    WeylOperator in = initial_form(g, w);
    forms.push_back(theta_to_s(to_weight_zero(in, max_weight(in, w), a)));
  }
  return eliminate_to_s(forms, budget.at("b-function elimination"));
}

std::vector<ModuleElement> as_rank_one(const std::vector<WeylOperator>& gens) {
  std::vector<ModuleElement> out;
  for (const auto& g : gens) out.push_back({g});
  return out;
}

bool contains_one(const std::vector<WeylOperator>& gens, const Budget& budget) {
  if (gens.empty()) return false;
  return ideal_contains(gens, WeylOperator::constant(gens.front().ring(), 1), budget);
}

std::vector<WeylOperator> unit_ideal(const RingPtr& r) { return {WeylOperator::constant(r, 1)}; }

Presentation zero_presentation(const RingPtr& r) {
  Presentation p;
  p.ring = r;
  p.cyclic_annihilator = unit_ideal(r);
  return p;
}

Presentation cyclic_presentation(const RingPtr& r, std::vector<WeylOperator> ann, std::string label) {
  Presentation p;
  p.ring = r;
  p.rank = 1;
  p.relations = as_rank_one(ann);
  p.cyclic_annihilator = std::move(ann);
  p.cyclic_label = std::move(label);
  return p;
}

std::string power_label(const std::string& u, std::size_t j) {
  if (j == 0) return u;
  return u + "*f^(-" + std::to_string(j) + ")";
}

// H^0 = I~ / I, a submodule of M = D / I.
Presentation kernel_presentation(const std::vector<WeylOperator>& I, const std::vector<WeylOperator>& Itilde,
                                 const RingPtr& r, const Budget& budget) {
  std::vector<WeylOperator> extra;
  if (I.empty()) {
    extra = Itilde;
  } else {
    auto gbI = buchberger(I, TermOrder::degrevlex(), budget);
    for (const auto& g : Itilde) {
      WeylOperator nf = gbI.normal_form(g);
      if (!nf.is_zero()) extra.push_back(nf);
    }
  }
  if (extra.empty()) return zero_presentation(r);
  for (const auto& g : extra) {
    std::vector<WeylOperator> span = I;
    span.push_back(g);
    auto gb = buchberger(span, TermOrder::degrevlex(), budget);
    if (std::all_of(extra.begin(), extra.end(), [&](const auto& e) { return gb.contains(e); })) {
      // D has no zero divisors, so Ann g = 0 when I = 0.
      std::vector<WeylOperator> ann;
      if (!I.empty()) ann = kernel_of_cyclic_map(as_rank_one(I), ModuleElement{g}, budget);
      return cyclic_presentation(r, reduced_basis(ann, budget), "[" + g.str() + "]");
    }
  }
  const std::size_t k = extra.size();
  std::vector<WeylOperator> all = extra;
  all.insert(all.end(), I.begin(), I.end());
  Presentation p;
  p.ring = r;
  p.rank = k;
  for (auto& s : syzygies(all, budget)) {
    ModuleElement head(s.begin(), s.begin() + static_cast<long>(k));
    if (!is_zero(head)) p.relations.push_back(std::move(head));
  }
  return p;
}

// Rows of N from the Groebner basis of L for the weight t:-1, dt:1.
std::vector<ModuleElement> restriction_relations(const GrobnerBasis& gb, int k1, const RingPtr& base) {
  const RingPtr& y = gb.ring();
  const auto& ry = *y;
  const auto w = t_weights(ry, -1);
  const std::size_t ts = ry.x_index(ry.t_pair()), ds = ry.d_index(ry.t_pair());
  const WeylOperator dt = WeylOperator::variable(y, "dt");
  std::vector<ModuleElement> out;
  for (const auto& g : gb.ideal_elements()) {
    const long m = max_weight(g, w);
    if (m > k1) continue;
    WeylOperator h = g;
    for (long j = 0; j + m <= k1; ++j) {
      std::vector<std::vector<WeylOperator::Term>> rows(static_cast<std::size_t>(k1) + 1);
      for (const auto& [mono, c] : h.terms()) {
        if (mono.e[ts] != 0) continue;
        const unsigned b = mono.e[ds];
        Monomial rest;
        for (std::size_t i = 0; i < ry.n(); ++i) {
          rest.e[base->x_index(i)] = mono.e[ry.x_index(i)];
          rest.e[base->d_index(i)] = mono.e[ry.d_index(i)];
        }
        rows.at(b).emplace_back(rest, c);
      }
      ModuleElement v;
      for (auto& row : rows) v.push_back(WeylOperator::from_terms(base, std::move(row)));
      if (!is_zero(v)) out.push_back(std::move(v));
      h = dt * h;
    }
  }
  return out;
}

std::vector<WeylOperator> embed_all(const std::vector<WeylOperator>& v, const RingPtr& r) {
  std::vector<WeylOperator> out;
  for (const auto& g : v) out.push_back(embed(g, r));
  return out;
}

}  // namespace

CyclicDMod::CyclicDMod(RingPtr r, std::vector<WeylOperator> gens, std::string name)
    : ring(std::move(r)), ideal(std::move(gens)), label(std::move(name)) {
  require_base_ring(ring, "CyclicDMod");
  for (auto& g : ideal) g = embed(g, ring);
}

RingPtr param_ring(const RingPtr& base) {
  require_base_ring(base, "param_ring");
  return base->with_params({"s"});
}

// ---------------------------------------------------------------- LSymbol

LSymbol::LSymbol(PolyWithParam a, long k, PolyWithParam f)
    : a_(std::move(a)), k_(k), f_(f.in_ring(a_.ring())) {
  require_nonconstant(f_);
  canonicalize();
}

void LSymbol::canonicalize() {
  if (a_.is_zero()) {
    k_ = 0;
    return;
  }
  while (k_ < 0) {
    a_ = a_ * f_;
    ++k_;
  }
  while (k_ > 0) {
    auto q = a_.divide_exact(f_);
    if (!q) break;
    a_ = std::move(*q);
    --k_;
  }
}

LSymbol LSymbol::t_shift() const {
  const auto slot = *a_.ring()->param_slot("s");
  return LSymbol(a_.shift_param(slot, 1), k_ - 1, f_);
}

LSymbol LSymbol::t_shift_inverse() const {
  const auto slot = *a_.ring()->param_slot("s");
  return LSymbol(a_.shift_param(slot, -1), k_ + 1, f_);
}

LSymbol operator+(const LSymbol& a, const LSymbol& b) {
  const long k = std::max(a.k_, b.k_);
  PolyWithParam x = a.a_, y = b.a_;
  for (long i = a.k_; i < k; ++i) x = x * a.f_;
  for (long i = b.k_; i < k; ++i) y = y * a.f_;
  return LSymbol(x + y, k, a.f_);
}

std::string LSymbol::str() const {
  std::ostringstream os;
  os << "(" << a_.str() << ")";
  if (k_ != 0) os << "*f^(-" << k_ << ")";
  os << "*f^s";
  return os.str();
}

LSymbol oracle_apply(const WeylOperator& P, const LSymbol& v) {
  const RingPtr& r = v.numerator().ring();
  WeylOperator p = embed(P, r);
  const auto& ring = *r;
  const std::size_t s_slot = *ring.param_slot("s");
  const PolyWithParam s(WeylOperator::variable(r, "s"));
  const PolyWithParam& f = v.f();
  std::vector<PolyWithParam> grad;
  for (std::size_t i = 0; i < ring.n(); ++i) grad.push_back(f.derivative(i));
  LSymbol acc(PolyWithParam(r), 0, f);
  for (const auto& [m, c] : p.terms()) {
    PolyWithParam a = v.numerator();
    long k = v.order();
    for (std::size_t i = 0; i < ring.n(); ++i) {
      for (unsigned e = 0; e < m.e[ring.d_index(i)] && !a.is_zero(); ++e) {
        PolyWithParam sk = s - PolyWithParam::constant(r, Rational(k));
        a = a.derivative(i) * f + sk * grad[i] * a;
        ++k;
      }
    }
    Monomial front = m;
    for (std::size_t i = 0; i < ring.n(); ++i) front.e[ring.d_index(i)] = 0;
    (void)s_slot;
    a = PolyWithParam(WeylOperator::monomial(r, front, c)) * a;
    acc = acc + LSymbol(std::move(a), k, f);
  }
  return acc;
}

// ---------------------------------------------------------------- ideals

std::vector<WeylOperator> malgrange_ideal(const CyclicDMod& M, const PolyWithParam& f) {
  require_nonconstant(f);
  const RingPtr y = M.ring->with_t();
  std::vector<WeylOperator> out;
  for (const auto& g : M.ideal) out.push_back(tau_prime(g, f));
  out.push_back(WeylOperator::variable(y, "t") - embed(f.in_ring(M.ring).op(), y));
  return out;
}

std::vector<WeylOperator> localization_ideal(const CyclicDMod& M, const PolyWithParam& f) {
  require_nonconstant(f);
  const RingPtr y = M.ring->with_t();
  std::vector<WeylOperator> out;
  for (const auto& g : M.ideal) out.push_back(tau(g, f));
  out.push_back(WeylOperator::variable(y, "t") * embed(f.in_ring(M.ring).op(), y) - WeylOperator::constant(y, 1));
  return out;
}

std::vector<WeylOperator> weight_zero_part(const std::vector<WeylOperator>& J, const Budget& budget) {
  if (J.empty()) return {};
  const RingPtr& y = J.front().ring();
  if (!y->has_t() || y->homogenized() || !y->params().empty())
    throw RingError("weight_zero_part: expected D_Y = D_X[t, dt]");
  const RingPtr yuv = y->with_params({"u", "v"});
  const auto& r = *yuv;
  const std::size_t us = *r.param_slot("u"), vs = *r.param_slot("v");
  const auto w = t_weights(r, 1);
  std::vector<WeylOperator> gens;
  for (const auto& g0 : J) {
    WeylOperator g = embed(g0, yuv);
    if (g.is_zero()) continue;
    const long top = max_weight(g, w);
    std::vector<WeylOperator::Term> terms;
    for (const auto& [m, c] : g.terms()) {
      Monomial mu = m;
      mu.e[us] = static_cast<std::uint16_t>(top - weight_of(m, w));
      terms.emplace_back(mu, c);
    }
    gens.push_back(WeylOperator::from_terms(yuv, std::move(terms)));
  }
  gens.push_back(WeylOperator::variable(yuv, "u") * WeylOperator::variable(yuv, "v") - WeylOperator::constant(yuv, 1));
  std::vector<WeylOperator> out;
  for (const auto& g : eliminate(gens, {us, vs}, budget.at("u,v elimination"))) {
    WeylOperator gy = embed(g, y);
    const auto wy = t_weights(*y, 1);
    out.push_back(theta_to_s(to_weight_zero(gy, max_weight(gy, wy), 1)));
  }
  return out;
}

RationalUnivariate weight_bfunction(const std::vector<WeylOperator>& J, const Budget& budget) {
  if (J.empty()) throw NoBFunction("weight b-function of the zero ideal does not exist");
  const RingPtr& y = J.front().ring();
  auto gb = buchberger(J, TermOrder::weighted(t_weights(*y, 1)), budget.at("weight Groebner basis"));
  RationalUnivariate p = indicial_polynomial(gb, 1, budget);
  if (p.is_zero()) throw NoBFunction("weight b-function does not exist");
  return p.reflect().monic();
}

// ---------------------------------------------------------------- localization

bool Presentation::is_zero(const Budget& budget) const {
  if (cyclic_annihilator) return contains_one(*cyclic_annihilator, budget);
  if (rank == 0) return true;
  std::vector<ModuleElement> units;
  for (std::size_t i = 0; i < rank; ++i) units.push_back(unit_vector(ring, rank, i));
  return modules_equal(relations, units, rank, budget);
}

LocalizationResult localize(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget) {
  require_nonconstant(f);
  const RingPtr& r = M.ring;
  LocalizationResult res;
  std::vector<WeylOperator> L;
  for (const auto& g : localization_ideal(M, f)) L.push_back(fourier_t(g));
  const RingPtr& y = L.front().ring();
  auto gbL = buchberger(L, TermOrder::weighted(t_weights(*y, -1)), budget.at("restriction Groebner basis"));
  RationalUnivariate p = indicial_polynomial(gbL, -1, budget);
  if (p.is_zero()) throw NoBFunction("integration b-function does not exist");
  res.integration_bfunction = p.compose_shift(-1).monic();
  res.k0 = integration_level(res.integration_bfunction);

  if (res.k0 < 0) {
    res.localized = zero_presentation(r);
    res.iota_annihilator = unit_ideal(r);
    res.generator_annihilator = unit_ideal(r);
    res.h0 = cyclic_presentation(r, reduced_basis(M.ideal, budget), M.label);
    res.h1 = zero_presentation(r);
    return res;
  }

  const std::size_t rank = static_cast<std::size_t>(res.k0) + 1;
  for (std::size_t j = 0; j < rank; ++j) res.labels.push_back(power_label(M.label, j));
  std::vector<ModuleElement> N = restriction_relations(gbL, res.k0, r);
  res.localized.ring = r;
  res.localized.rank = rank;
  res.localized.relations = N;

  const Budget mb = budget.at("localization module");
  auto gbN = buchberger(N, rank, r, TermOrder::degrevlex(), mb);
  const WeylOperator fr = f.in_ring(r).op();
  for (std::size_t j = 1; j < rank; ++j) {
    ModuleElement v(rank, WeylOperator(r));
    v[j] = fr;
    v[j - 1] = WeylOperator::constant(r, -1);
    if (!gbN.contains(v)) throw VerificationFailure("localization: f*e_j - e_(j-1) not in N");
  }

  res.iota_annihilator = reduced_basis(kernel_of_cyclic_map(N, unit_vector(r, rank, 0), mb), budget);

  const ModuleElement top = unit_vector(r, rank, rank - 1);
  res.generator_index = rank - 1;
  for (std::size_t j = 0; j + 1 < rank; ++j) {
    std::vector<ModuleElement> span = N;
    span.push_back(unit_vector(r, rank, j));
    if (buchberger(span, rank, r, TermOrder::degrevlex(), mb).contains(top)) {
      res.generator_index = j;
      break;
    }
  }
  res.generator_annihilator =
      reduced_basis(kernel_of_cyclic_map(N, unit_vector(r, rank, res.generator_index), mb), budget);
  res.localized.cyclic_annihilator = res.generator_annihilator;
  res.localized.cyclic_label = res.labels[res.generator_index];

  res.h0 = kernel_presentation(M.ideal, res.iota_annihilator, r, budget.at("local cohomology H0"));

  if (res.generator_index == 0) {
    res.h1 = zero_presentation(r);
  } else {
    std::vector<ModuleElement> span = N;
    span.push_back(unit_vector(r, rank, 0));
    auto ann = kernel_of_cyclic_map(span, unit_vector(r, rank, res.generator_index), budget.at("local cohomology H1"));
    if (contains_one(ann, budget))
      res.h1 = zero_presentation(r);
    else
      res.h1 = cyclic_presentation(r, reduced_basis(ann, budget), res.labels[res.generator_index]);
  }
  return res;
}

bool is_polynomial_module(const CyclicDMod& M, const Budget& budget) {
  std::vector<WeylOperator> ds;
  for (std::size_t i = 0; i < M.ring->n(); ++i)
    ds.push_back(WeylOperator::variable(M.ring, M.ring->var_name(M.ring->d_index(i))));
  return ideals_equal(M.ideal, ds, budget);
}

bool is_f_saturated(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget) {
  if (is_polynomial_module(M, budget)) return true;
  auto loc = localize(M, f, budget);
  const bool by_h0 = loc.h0.is_zero(budget);
  const bool by_ideal = std::all_of(loc.iota_annihilator.begin(), loc.iota_annihilator.end(),
                                    [&](const auto& g) { return ideal_contains(M.ideal, g, budget); });
  if (by_h0 != by_ideal) throw VerificationFailure("saturation: H0 and ideal comparison disagree");
  return by_h0;
}

// ---------------------------------------------------------------- Ann f^s

ParamAnnihilator ann_fs(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget) {
  require_nonconstant(f);
  ParamAnnihilator ann{param_ring(M.ring), {}, f.in_ring(M.ring), true, false};
  ann.holonomicity_verified = is_holonomic(M.ideal, M.ring, budget.at("holonomicity"));
  std::vector<WeylOperator> itilde;
  if (is_polynomial_module(M, budget)) {
    itilde = M.ideal;
    ann.via_localization = false;
  } else {
    auto loc = localize(M, f, budget);
    if (loc.k0 < 0) {
      ann.generators = unit_ideal(ann.ring);
      return ann;
    }
    itilde = loc.iota_annihilator;
  }
  CyclicDMod saturated(M.ring, itilde, M.label);
  auto part = weight_zero_part(malgrange_ideal(saturated, f), budget);
  ann.generators = reduced_basis(embed_all(part, ann.ring), budget.at("annihilator basis"));
  return ann;
}

RationalUnivariate bfunction_from_annihilator(const ParamAnnihilator& ann, const Budget& budget) {
  std::vector<WeylOperator> gens = ann.generators;
  gens.push_back(embed(ann.f.op(), ann.ring));
  RationalUnivariate b = eliminate_to_s(gens, budget.at("b-function elimination"));
  if (b.is_zero()) throw NoBFunction("b-function does not exist");
  return b;
}

BFunctionResult bfunction(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget) {
  require_nonconstant(f);
  BFunctionResult res;
  const RingPtr rs = param_ring(M.ring);
  auto part = embed_all(weight_zero_part(malgrange_ideal(M, f), budget), rs);
  part.push_back(embed(f.in_ring(M.ring).op(), rs));
  RationalUnivariate direct = eliminate_to_s(part, budget.at("b-function existence"));
  if (direct.is_zero()) return res;
  res.exists = true;
  if (is_polynomial_module(M, budget)) {
    res.b = direct;
    return res;
  }
  res.b = bfunction_from_annihilator(ann_fs(M, f, budget), budget);
  return res;
}

namespace {

WeylOperator as_operator(const RationalUnivariate& b, const RingPtr& r) {
  const std::size_t s = *r->param_slot("s");
  std::vector<WeylOperator::Term> terms;
  for (std::size_t i = 0; i < b.coefficients().size(); ++i) {
    Monomial m;
    m.e[s] = static_cast<std::uint16_t>(i);
    terms.emplace_back(m, b.coefficients()[i]);
  }
  return WeylOperator::from_terms(r, std::move(terms));
}

}  // namespace

std::optional<WeylOperator> functional_equation_operator(const ParamAnnihilator& ann, const RationalUnivariate& b,
                                                         const Budget& budget) {
  // Only the cofactor of f is tracked: (g, 0) for g in Ann and (f, 1).
  const RingPtr& r = ann.ring;
  std::vector<ModuleElement> ext;
  for (const auto& g : ann.generators) ext.push_back({g, WeylOperator(r)});
  ext.push_back({embed(ann.f.op(), r), WeylOperator::constant(r, 1)});
  auto gb = buchberger(ext, 2, r, TermOrder::degrevlex(), budget.at("functional equation"));
  ModuleElement nf = gb.normal_form(ModuleElement{as_operator(b, r), WeylOperator(r)});
  if (!nf[0].is_zero()) return std::nullopt;
  return -nf[1];
}

namespace {

GrobnerBasis bernstein_ideal(const ParamAnnihilator& ann, const Budget& budget) {
  std::vector<WeylOperator> gens = ann.generators;
  gens.push_back(embed(ann.f.op(), ann.ring));
  return buchberger(gens, TermOrder::degrevlex(), budget);
}

}  // namespace

bool verify_functional_equation(const CyclicDMod& M, const ParamAnnihilator& ann, const RationalUnivariate& b,
                                const Budget& budget) {
  if (b.is_zero()) return false;
  if (!bernstein_ideal(ann, budget).contains(as_operator(b, ann.ring))) return false;
  if (!is_polynomial_module(M, budget)) return true;
  auto P = functional_equation_operator(ann, b, budget);
  if (!P) return false;
  const PolyWithParam f = ann.f.in_ring(ann.ring);
  LSymbol lhs = oracle_apply(*P, LSymbol(f, 0, f));
  LSymbol rhs(PolyWithParam(as_operator(b, ann.ring)), 0, f);
  return lhs == rhs;
}

bool verify_minimality(const ParamAnnihilator& ann, const RationalUnivariate& b, const Budget& budget) {
  auto gb = bernstein_ideal(ann, budget);
  for (const auto& root : rational_roots(b)) {
    auto [q, rem] = b.divmod(RationalUnivariate::linear(root.value, b.var()));
    if (gb.contains(as_operator(q, ann.ring))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- lambda

bool generation_check(const RationalUnivariate& b, const Rational& lambda) { return generator_level(b, lambda) == 0; }

std::vector<WeylOperator> lambda_module(const ParamAnnihilator& ann, const RationalUnivariate& b,
                                        const Rational& lambda, const Budget& budget) {
  const unsigned k0 = generator_level(b, lambda);
  const Rational at = lambda - Rational(k0);
  std::vector<WeylOperator> sub;
  for (const auto& g : ann.generators) {
    WeylOperator q = substitute_param(g, "s", at);
    if (!q.is_zero()) sub.push_back(std::move(q));
  }
  if (sub.empty()) throw RingError("lambda_module: annihilator vanishes identically");
  const RingPtr r = sub.front().ring();
  if (k0 == 0) return reduced_basis(sub, budget);
  WeylOperator fk = power(embed(ann.f.op(), r), k0);
  return reduced_basis(kernel_of_cyclic_map(as_rank_one(sub), ModuleElement{fk}, budget.at("lambda module")), budget);
}

std::vector<WeylOperator> lambda_module(const CyclicDMod& M, const PolyWithParam& f, const Rational& lambda,
                                        const Budget& budget) {
  auto ann = ann_fs(M, f, budget);
  return lambda_module(ann, bfunction_from_annihilator(ann, budget), lambda, budget);
}

// ---------------------------------------------------------------- misc

RationalUnivariate to_univariate(const WeylOperator& p, std::size_t slot, const std::string& var) {
  std::vector<Rational> c;
  for (const auto& [m, coef] : p.terms()) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (i != slot && m.e[i] != 0) throw RingError("to_univariate: operator has other variables");
    const std::size_t e = m.e[slot];
    if (c.size() <= e) c.resize(e + 1);
    c[e] += coef;
  }
  return RationalUnivariate(std::move(c), var);
}

std::vector<WeylOperator> reduced_basis(const std::vector<WeylOperator>& gens, const Budget& budget) {
  std::vector<WeylOperator> nz;
  for (const auto& g : gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) return {};
  std::vector<WeylOperator> out;
  for (const auto& g : buchberger(nz, TermOrder::degrevlex(), budget).ideal_elements()) out.push_back(monic(g));
  return out;
}

}  // namespace dmod
