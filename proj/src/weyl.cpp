#include "dmod/weyl.hpp"

#include <algorithm>
#include <sstream>

#include "dmod/kernels.hpp"

namespace dmod {

bool canonical_greater(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = kMaxVars; i-- > 0;)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

namespace {

struct LeibnizTable {
  // rows[b][c] holds v = 0..min(b,c)
  std::vector<std::vector<std::vector<Integer>>> rows;
  LeibnizTable() {
    const unsigned n = detail::kLeibnizTable;
    rows.assign(n, std::vector<std::vector<Integer>>(n));
    for (unsigned b = 0; b < n; ++b)
      for (unsigned c = 0; c < n; ++c) {
        unsigned m = std::min(b, c);
        auto& r = rows[b][c];
        r.resize(m + 1);
        r[0] = 1;
        // C(b,v+1)C(c,v+1)(v+1)! = C(b,v)C(c,v)v! * (b-v)(c-v)/(v+1)
        for (unsigned v = 0; v < m; ++v) r[v + 1] = r[v] * (b - v) * (c - v) / (v + 1);
      }
  }
};

const LeibnizTable& leibniz_table() {
  static const LeibnizTable t;
  return t;
}

}  // namespace

const Integer* detail::leibniz_row(unsigned b, unsigned c) { return leibniz_table().rows[b][c].data(); }

Integer leibniz_coefficient(unsigned b, unsigned c, unsigned v) {
  if (v > b || v > c) return 0;
  if (b < detail::kLeibnizTable && c < detail::kLeibnizTable) return detail::leibniz_row(b, c)[v];
  Integer r = 1;
  for (unsigned k = 0; k < v; ++k) r = r * (b - k) * (c - k) / (k + 1);
  return r;
}

WeylOperator WeylOperator::constant(RingPtr ring, const Rational& c) {
  WeylOperator p(std::move(ring));
  if (c != 0) p.terms_.emplace_back(Monomial{}, c);
  if (c != 0) p.terms_.back().second.canonicalize();
  return p;
}

WeylOperator WeylOperator::variable(RingPtr ring, std::string_view name) {
  auto slot = ring->index_of(name);
  if (!slot) throw RingError("unknown variable '" + std::string(name) + "'");
  Monomial m;
  m.e[*slot] = 1;
  return monomial(std::move(ring), m, 1);
}

WeylOperator WeylOperator::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  for (std::size_t i = ring->nvars(); i < kMaxVars; ++i)
    if (m.e[i] != 0) throw RingError("monomial uses a slot outside the ring");
  WeylOperator p(std::move(ring));
  if (c != 0) p.terms_.emplace_back(m, c);
  if (c != 0) p.terms_.back().second.canonicalize();
  return p;
}

WeylOperator WeylOperator::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return canonical_greater(a.first, b.first); });
  WeylOperator p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool WeylOperator::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Monomial{});
}

int WeylOperator::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_[0].first.degree()); }

bool WeylOperator::free_of(std::size_t slot) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first.e[slot] == 0; });
}

namespace {

std::vector<WeylOperator::Term> merge_terms(const std::vector<WeylOperator::Term>& a,
                                            const std::vector<WeylOperator::Term>& b, bool negate_b) {
  std::vector<WeylOperator::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && canonical_greater(a[i].first, b[j].first))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || canonical_greater(b[j].first, a[i].first)) {
      out.emplace_back(b[j].first, negate_b ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational c = negate_b ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

WeylOperator& WeylOperator::operator+=(const WeylOperator& o) {
  require_same_ring(ring_, o.ring_, "add");
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o) {
  require_same_ring(ring_, o.ring_, "subtract");
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

WeylOperator& WeylOperator::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

bool operator==(const WeylOperator& a, const WeylOperator& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

namespace {

void write_monomial(std::ostream& os, const RingContext& ring, const Monomial& m, bool& first) {
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (m.e[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << ring.var_name(i);
    if (m.e[i] > 1) os << '^' << m.e[i];
  }
}

}  // namespace

std::string WeylOperator::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool lead = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (c < 0)
      os << '-';
    else if (!lead)
      os << '+';
    lead = false;
    bool first = true;
    if (a != 1 || m == Monomial{}) {
      os << a.get_str();
      first = false;
    }
    write_monomial(os, *ring_, m, first);
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const WeylOperator& p) { return os << p.str(); }

WeylOperator add(const WeylOperator& p, const WeylOperator& q) { return p + q; }

WeylOperator normal_product(const WeylOperator& p, const WeylOperator& q) {
  require_same_ring(p.ring(), q.ring(), "normal_product");
  if (p.size() * q.size() >= kernels::kParallelProductThreshold && kernels::max_threads() > 1)
    return kernels::weyl_product_parallel(p, q);
  return kernels::weyl_product_serial(p, q);
}

WeylOperator operator*(const WeylOperator& p, const WeylOperator& q) { return normal_product(p, q); }

WeylOperator power(const WeylOperator& p, unsigned k) {
  WeylOperator r = WeylOperator::constant(p.ring(), 1);
  WeylOperator b = p;
  while (k > 0) {
    if (k & 1U) r = r * b;
    k >>= 1U;
    if (k > 0) b = b * b;
  }
  return r;
}

namespace {

void require_commutative(const WeylOperator& op) {
  const auto& ring = *op.ring();
  for (std::size_t i = 0; i < ring.pairs(); ++i)
    if (!op.free_of(ring.d_index(i))) throw RingError("polynomial contains a derivation");
  if (ring.has_t() && !op.free_of(ring.x_index(ring.t_pair()))) throw RingError("polynomial contains t");
  if (ring.homogenized() && !op.free_of(ring.h_index())) throw RingError("polynomial contains h");
}

}  // namespace

PolyWithParam::PolyWithParam(WeylOperator op) : op_(std::move(op)) { require_commutative(op_); }

PolyWithParam PolyWithParam::derivative(std::size_t pair) const {
  const std::size_t slot = ring()->x_index(pair);
  std::vector<WeylOperator::Term> out;
  for (const auto& [m, c] : op_.terms()) {
    if (m.e[slot] == 0) continue;
    Monomial d = m;
    --d.e[slot];
    out.emplace_back(d, c * m.e[slot]);
  }
  return PolyWithParam(WeylOperator::from_terms(ring(), std::move(out)));
}

PolyWithParam PolyWithParam::shift_param(std::size_t slot, const Rational& shift) const {
  std::vector<WeylOperator::Term> out;
  for (const auto& [m, c] : op_.terms()) {
    unsigned e = m.e[slot];
    // (s + shift)^e = sum_j C(e,j) shift^(e-j) s^j
    Integer binom = 1;
    for (unsigned j = 0; j <= e; ++j) {
      Monomial r = m;
      r.e[slot] = static_cast<std::uint16_t>(j);
      Rational sp = 1;
      for (unsigned k = j; k < e; ++k) sp *= shift;
      out.emplace_back(r, c * Rational(binom) * sp);
      binom = binom * (e - j) / (j + 1);
    }
  }
  return PolyWithParam(WeylOperator::from_terms(ring(), std::move(out)));
}

std::optional<PolyWithParam> PolyWithParam::divide_exact(const PolyWithParam& f) const {
  require_same_ring(ring(), f.ring(), "divide_exact");
  if (f.is_zero()) throw RingError("division by zero polynomial");
  const auto& [fm, fc] = f.op_.terms()[0];
  WeylOperator r = op_;
  std::vector<WeylOperator::Term> q;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.terms()[0];
    if (!fm.divides(rm)) return std::nullopt;
    Monomial qm;
    for (std::size_t i = 0; i < kMaxVars; ++i) qm.e[i] = static_cast<std::uint16_t>(rm.e[i] - fm.e[i]);
    Rational qc = rc / fc;
    q.emplace_back(qm, qc);
    r -= WeylOperator::monomial(ring(), qm, qc) * f.op_;
  }
  return PolyWithParam(WeylOperator::from_terms(ring(), std::move(q)));
}

PolyWithParam PolyWithParam::in_ring(const RingPtr& target) const { return PolyWithParam(embed(op_, target)); }

PolyWithParam apply_to_poly(const WeylOperator& p, const PolyWithParam& g) {
  require_same_ring(p.ring(), g.ring(), "apply_to_poly");
  const auto& ring = *p.ring();
  if (ring.has_t() && (!p.free_of(ring.x_index(ring.t_pair())) || !p.free_of(ring.d_index(ring.t_pair()))))
    throw RingError("apply_to_poly: operator contains t or dt");
  if (ring.homogenized() && !p.free_of(ring.h_index())) throw RingError("apply_to_poly: operator contains h");
  const std::size_t n = ring.n();
  WeylOperator acc(p.ring());
  for (const auto& [m, c] : p.terms()) {
    PolyWithParam d = g;
    for (std::size_t i = 0; i < n && !d.is_zero(); ++i)
      for (unsigned k = 0; k < m.e[ring.d_index(i)] && !d.is_zero(); ++k) d = d.derivative(i);
    if (d.is_zero()) continue;
    Monomial mult = m;
    for (std::size_t i = 0; i < n; ++i) mult.e[ring.d_index(i)] = 0;
    acc += WeylOperator::monomial(p.ring(), mult, c) * d.op();
  }
  return PolyWithParam(std::move(acc));
}

WeylOperator embed(const WeylOperator& p, const RingPtr& target) {
  const auto& src = *p.ring();
  if (same_ring(p.ring(), target)) return p;
  std::size_t map[kMaxVars];
  bool used[kMaxVars] = {};
  for (const auto& [m, c] : p.terms())
    for (std::size_t i = 0; i < src.nvars(); ++i)
      if (m.e[i]) used[i] = true;
  for (std::size_t i = 0; i < src.nvars(); ++i) {
    if (!used[i]) continue;
    auto slot = target->index_of(src.var_name(i));
    if (!slot) throw RingError("embed: variable '" + src.var_name(i) + "' missing in target ring");
    map[i] = *slot;
  }
  std::vector<WeylOperator::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial r;
    for (std::size_t i = 0; i < src.nvars(); ++i)
      if (m.e[i]) r.e[map[i]] = m.e[i];
    out.emplace_back(r, c);
  }
  return WeylOperator::from_terms(target, std::move(out));
}

namespace {

// Substitutes d_i -> image[i] for the base pairs, keeping x_i and params.
WeylOperator substitute_derivations(const WeylOperator& p, const RingPtr& target,
                                    const std::vector<WeylOperator>& image) {
  const auto& src = *p.ring();
  const std::size_t n = src.n();
  std::vector<std::vector<WeylOperator>> powers(n);
  auto power_of = [&](std::size_t i, unsigned k) -> const WeylOperator& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(WeylOperator::constant(target, 1));
    while (pw.size() <= k) pw.push_back(pw.back() * image[i]);
    return pw[k];
  };
  WeylOperator acc(target);
  for (const auto& [m, c] : p.terms()) {
    Monomial front = m;
    for (std::size_t i = 0; i < n; ++i) front.e[src.d_index(i)] = 0;
    WeylOperator term = embed(WeylOperator::monomial(p.ring(), front, c), target);
    for (std::size_t i = 0; i < n; ++i)
      if (m.e[src.d_index(i)]) term = term * power_of(i, m.e[src.d_index(i)]);
    acc += term;
  }
  return acc;
}

void require_base_operator(const WeylOperator& p, const char* what) {
  if (p.ring()->has_t()) throw RingError(std::string(what) + ": operator ring already has t");
  if (p.ring()->homogenized()) throw RingError(std::string(what) + ": homogenized input");
}

}  // namespace

WeylOperator tau(const WeylOperator& p, const PolyWithParam& f) {
  require_base_operator(p, "tau");
  RingPtr y = p.ring()->with_t();
  const auto& ry = *y;
  WeylOperator dtt2 = WeylOperator::variable(y, "dt") * power(WeylOperator::variable(y, "t"), 2);
  std::vector<WeylOperator> image;
  for (std::size_t i = 0; i < p.ring()->n(); ++i) {
    WeylOperator fi = embed(f.in_ring(p.ring()).derivative(i).op(), y);
    image.push_back(WeylOperator::variable(y, ry.var_name(ry.d_index(i))) - fi * dtt2);
  }
  return substitute_derivations(p, y, image);
}

WeylOperator tau_prime(const WeylOperator& p, const PolyWithParam& f) {
  require_base_operator(p, "tau_prime");
  RingPtr y = p.ring()->with_t();
  const auto& ry = *y;
  WeylOperator dt = WeylOperator::variable(y, "dt");
  std::vector<WeylOperator> image;
  for (std::size_t i = 0; i < p.ring()->n(); ++i) {
    WeylOperator fi = embed(f.in_ring(p.ring()).derivative(i).op(), y);
    image.push_back(WeylOperator::variable(y, ry.var_name(ry.d_index(i))) + fi * dt);
  }
  return substitute_derivations(p, y, image);
}

WeylOperator fourier_t(const WeylOperator& p) {
  const auto& ring = *p.ring();
  const std::size_t tp = ring.t_pair();
  const std::size_t ts = ring.x_index(tp), ds = ring.d_index(tp);
  std::vector<WeylOperator::Term> out;
  for (const auto& [m, c] : p.terms()) {
    unsigned a = m.e[ts], b = m.e[ds];
    Monomial rest = m;
    rest.e[ts] = 0;
    rest.e[ds] = 0;
    Monomial lhs, rhs;
    lhs.e[ds] = static_cast<std::uint16_t>(a);
    rhs.e[ts] = static_cast<std::uint16_t>(b);
    Rational sign = (b % 2) ? -1 : 1;
    expand_monomial_product(ring, lhs, rhs, [&](const Monomial& r, const Integer& k) {
      out.emplace_back(r + rest, c * sign * Rational(k));
    });
  }
  return WeylOperator::from_terms(p.ring(), std::move(out));
}

WeylOperator theta_to_s(const WeylOperator& p) {
  const auto& ring = *p.ring();
  if (ring.homogenized()) throw RingError("theta_to_s: homogenized input");
  if (ring.param_slot("s")) throw RingError("theta_to_s: ring already has s");
  const std::size_t tp = ring.t_pair();
  const std::size_t ts = ring.x_index(tp), ds = ring.d_index(tp);
  RingPtr out_ring = ring.without_t()->with_params({"s"});
  const auto& ro = *out_ring;
  const std::size_t s_slot = *ro.param_slot("s");
  // prod[k] = coefficients of (-1)^k (s+1)...(s+k) in ascending powers of s
  std::vector<std::vector<Integer>> prod{{Integer(1)}};
  std::vector<WeylOperator::Term> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.e[ts] != m.e[ds]) throw RingError("theta_to_s: term of nonzero t-weight");
    unsigned k = m.e[ts];
    while (prod.size() <= k) {
      const auto& prev = prod.back();
      unsigned j = static_cast<unsigned>(prod.size());
      std::vector<Integer> next(prev.size() + 1);
      for (std::size_t i = 0; i < prev.size(); ++i) {
        next[i] -= prev[i] * j;
        next[i + 1] -= prev[i];
      }
      prod.push_back(std::move(next));
    }
    Monomial base;
    for (std::size_t i = 0; i < ring.n(); ++i) {
      base.e[ro.x_index(i)] = m.e[ring.x_index(i)];
      base.e[ro.d_index(i)] = m.e[ring.d_index(i)];
    }
    for (std::size_t q = 0; q < ring.params().size(); ++q) base.e[ro.param_index(q)] = m.e[ring.param_index(q)];
    for (std::size_t e = 0; e < prod[k].size(); ++e) {
      if (prod[k][e] == 0) continue;
      Monomial r = base;
      r.e[s_slot] = static_cast<std::uint16_t>(e);
      out.emplace_back(r, c * Rational(prod[k][e]));
    }
  }
  return WeylOperator::from_terms(out_ring, std::move(out));
}

WeylOperator s_to_theta(const WeylOperator& p) {
  const auto& ring = *p.ring();
  auto s_slot = ring.param_slot("s");
  if (!s_slot) throw RingError("s_to_theta: ring has no s");
  if (ring.has_t()) throw RingError("s_to_theta: ring already has t");
  RingPtr y = ring.without_param("s")->with_t();
  WeylOperator minus_dt_t = -(WeylOperator::variable(y, "dt") * WeylOperator::variable(y, "t"));
  std::vector<WeylOperator> powers{WeylOperator::constant(y, 1)};
  WeylOperator acc(y);
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m.e[*s_slot];
    while (powers.size() <= e) powers.push_back(powers.back() * minus_dt_t);
    Monomial rest = m;
    rest.e[*s_slot] = 0;
    acc += embed(WeylOperator::monomial(p.ring(), rest, c), y) * powers[e];
  }
  return acc;
}

WeylOperator substitute_param(const WeylOperator& p, std::string_view name, const Rational& value) {
  const auto& ring = *p.ring();
  auto slot = ring.param_slot(name);
  if (!slot) throw RingError("substitute_param: unknown parameter '" + std::string(name) + "'");
  RingPtr target = ring.without_param(name);
  std::vector<WeylOperator::Term> out;
  for (const auto& [m, c] : p.terms()) {
    Rational v = 1;
    for (unsigned k = 0; k < m.e[*slot]; ++k) v *= value;
    Monomial r = m;
    r.e[*slot] = 0;
    out.emplace_back(r, c * v);
  }
  return embed(WeylOperator::from_terms(p.ring(), std::move(out)), target);
}

WeylOperator homogenize(const WeylOperator& p, const RingPtr& homog_ring) {
  if (!homog_ring->homogenized()) throw RingError("homogenize: target ring has no h");
  WeylOperator q = embed(p, homog_ring);
  const std::size_t h = homog_ring->h_index();
  unsigned top = 0;
  for (const auto& [m, c] : q.terms()) top = std::max(top, m.degree());
  std::vector<WeylOperator::Term> out;
  for (const auto& [m, c] : q.terms()) {
    Monomial r = m;
    r.e[h] = static_cast<std::uint16_t>(r.e[h] + top - m.degree());
    out.emplace_back(r, c);
  }
  return WeylOperator::from_terms(homog_ring, std::move(out));
}

WeylOperator dehomogenize(const WeylOperator& p, const RingPtr& plain_ring) {
  const auto& ring = *p.ring();
  if (!ring.homogenized()) return embed(p, plain_ring);
  const std::size_t h = ring.h_index();
  std::vector<WeylOperator::Term> out;
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    r.e[h] = 0;
    out.emplace_back(r, c);
  }
  return embed(WeylOperator::from_terms(p.ring(), std::move(out)), plain_ring);
}

long weight_of(const Monomial& m, const std::vector<int>& w) {
  long s = 0;
  for (std::size_t i = 0; i < w.size() && i < kMaxVars; ++i) s += static_cast<long>(w[i]) * m.e[i];
  return s;
}

}  // namespace dmod
