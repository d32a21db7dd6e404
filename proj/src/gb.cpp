#include "dmod/gb.hpp"

#include <algorithm>
#include <mutex>
#include <array>
#include <numeric>
#include <sstream>

namespace dmod {

bool TermOrder::needs_homogenization() const {
  for (const auto& r : rows)
    for (int w : r)
      if (w < 0) return true;
  return false;
}

TermOrder TermOrder::weighted(std::vector<int> w) {
  TermOrder o;
  o.rows.push_back(std::move(w));
  return o;
}

TermOrder TermOrder::eliminating(const std::vector<std::size_t>& block_slots) {
  std::vector<int> w(kMaxVars, 0);
  for (auto s : block_slots) w.at(s) = 1;
  return weighted(std::move(w));
}

TermOrder TermOrder::total_degree_top() {
  TermOrder o;
  o.module = ModuleOrder::TermOverPosition;
  return o;
}

Budget Budget::seconds(double s) {
  Budget b;
  b.deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(s));
  return b;
}

namespace detail {

constexpr std::size_t kKeyLen = 8;

struct ITerm {
  Monomial m;
  std::uint32_t pos = 0;
  std::array<std::int64_t, kKeyLen> key{};
  Integer c;
};

struct IPoly {
  std::vector<ITerm> t;
  unsigned sugar = 0;
  std::uint32_t xmask = 0;
  std::uint32_t dmask = 0;
  std::uint32_t lead_mask = 0;

  [[nodiscard]] bool zero() const { return t.empty(); }
  [[nodiscard]] const ITerm& lead() const { return t.front(); }
};

std::uint32_t slot_mask(const Monomial& m, std::size_t nvars) {
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < nvars; ++i)
    if (m.e[i]) r |= 1U << i;
  return r;
}

class Engine {
 public:
  Engine(const RingPtr& user_ring, TermOrder order, std::size_t rank)
      : user_ring_(user_ring), order_(std::move(order)), rank_(rank) {
    if (user_ring->homogenized()) throw RingError("Groebner input ring must not be homogenized");
    homog_ = order_.needs_homogenization();
    ring_ = homog_ ? user_ring->with_homogenization(true) : user_ring;
    const std::size_t fixed = 2 + (homog_ ? 1 : 0);
    if (order_.rows.size() + fixed > kKeyLen) throw RingError("too many weight rows");
    klen_ = order_.rows.size() + fixed;
    nrev_ = user_ring->nvars();
    nvars_ = ring_->nvars();
    for (auto& r : order_.rows) r.resize(nvars_, 0);
  }

  [[nodiscard]] const RingPtr& ring() const { return ring_; }
  [[nodiscard]] const RingPtr& user_ring() const { return user_ring_; }
  [[nodiscard]] const TermOrder& order() const { return order_; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] bool homogenized() const { return homog_; }

  void set_key(ITerm& t) const {
    std::size_t k = 0;
    const std::int64_t pk = order_.positions_descending ? -static_cast<std::int64_t>(t.pos) : t.pos;
    const bool pot = order_.module == ModuleOrder::PositionOverTerm;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < nvars_; ++i) total += t.m.e[i];
    if (pot) t.key[k++] = pk;
    if (homog_) t.key[k++] = total;
    for (const auto& row : order_.rows) {
      std::int64_t w = 0;
      for (std::size_t i = 0; i < nvars_; ++i) w += static_cast<std::int64_t>(row[i]) * t.m.e[i];
      t.key[k++] = w;
    }
    t.key[k++] = homog_ ? total - t.m.e[ring_->h_index()] : total;
    if (!pot) t.key[k++] = pk;
  }

  // >0 when a is greater
  [[nodiscard]] int cmp(const ITerm& a, const ITerm& b) const {
    for (std::size_t k = 0; k < klen_; ++k)
      if (a.key[k] != b.key[k]) return a.key[k] > b.key[k] ? 1 : -1;
    for (std::size_t i = nrev_; i-- > 0;)
      if (a.m.e[i] != b.m.e[i]) return a.m.e[i] < b.m.e[i] ? 1 : -1;
    return 0;
  }

  void sort_merge(std::vector<ITerm>& v) const {
    std::sort(v.begin(), v.end(), [this](const ITerm& a, const ITerm& b) { return cmp(a, b) > 0; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (w > 0 && v[w - 1].pos == v[r].pos && v[w - 1].m == v[r].m) {
        v[w - 1].c += v[r].c;
      } else {
        if (w > 0 && v[w - 1].c == 0) --w;
        if (w != r) v[w] = std::move(v[r]);
        ++w;
      }
    }
    if (w > 0 && v[w - 1].c == 0) --w;
    v.resize(w);
  }

  void finish(IPoly& p) const {
    p.xmask = p.dmask = 0;
    const std::size_t pairs = ring_->pairs();
    for (const auto& t : p.t)
      for (std::size_t i = 0; i < pairs; ++i) {
        if (t.m.e[ring_->x_index(i)]) p.xmask |= 1U << i;
        if (t.m.e[ring_->d_index(i)]) p.dmask |= 1U << i;
      }
    p.lead_mask = p.t.empty() ? 0 : slot_mask(p.t[0].m, nvars_);
  }

  [[nodiscard]] IPoly mul_monomial(const Monomial& m, const IPoly& g) const {
    IPoly out;
    out.t.reserve(g.t.size());
    for (const auto& gt : g.t) {
      expand_monomial_product(*ring_, m, gt.m, [&](const Monomial& r, const Integer& k) {
        ITerm t;
        t.m = r;
        t.pos = gt.pos;
        t.c = k == 1 ? gt.c : Integer(gt.c * k);
        set_key(t);
        out.t.push_back(std::move(t));
      });
    }
    sort_merge(out.t);
    out.sugar = g.sugar + m.degree();
    return out;
  }

  // a*r[from..] - b*q with the (cancelling) leading terms of both skipped
  [[nodiscard]] std::vector<ITerm> lin_comb(const Integer& a, const std::vector<ITerm>& r, std::size_t from,
                                            const Integer& b, const std::vector<ITerm>& q) const {
    std::vector<ITerm> out;
    out.reserve(r.size() - from + q.size());
    std::size_t i = from + 1, j = 1;
    const bool a1 = a == 1;
    while (i < r.size() || j < q.size()) {
      int c = i == r.size() ? -1 : j == q.size() ? 1 : cmp(r[i], q[j]);
      if (c > 0) {
        out.push_back(r[i]);
        if (!a1) out.back().c *= a;
        ++i;
      } else if (c < 0) {
        out.push_back(q[j]);
        out.back().c *= b;
        out.back().c = -out.back().c;
        ++j;
      } else {
        Integer v = a * r[i].c - b * q[j].c;
        if (v != 0) {
          out.push_back(r[i]);
          out.back().c = std::move(v);
        }
        ++i;
        ++j;
      }
    }
    return out;
  }

  // The result equals factor * v (homogenized when the order requires it).
  [[nodiscard]] IPoly to_internal(const ModuleElement& v, Rational* factor = nullptr) const {
    if (v.size() != rank_) throw RingError("module element has wrong rank");
    unsigned top = 0;
    Integer den = 1;
    for (const auto& comp : v) {
      require_same_ring(comp.ring(), user_ring_, "groebner input");
      for (const auto& [m, c] : comp.terms()) {
        top = std::max(top, m.degree());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      }
    }
    IPoly p;
    for (std::size_t pos = 0; pos < rank_; ++pos)
      for (const auto& [m, c] : v[pos].terms()) {
        ITerm t;
        t.m = m;
        if (homog_) t.m.e[ring_->h_index()] = static_cast<std::uint16_t>(top - m.degree());
        t.pos = static_cast<std::uint32_t>(pos);
        t.c = c.get_num() * (den / c.get_den());
        set_key(t);
        p.t.push_back(std::move(t));
      }
    sort_merge(p.t);
    p.sugar = top;
    if (factor) *factor = Rational(den);
    make_primitive(p, factor);
    finish(p);
    return p;
  }

  [[nodiscard]] ModuleElement to_external(const IPoly& p, bool monic) const {
    std::vector<std::vector<WeylOperator::Term>> comps(rank_);
    Rational scale = 1;
    if (monic && !p.zero()) scale = Rational(1) / Rational(p.lead().c);
    for (const auto& t : p.t) {
      Monomial m = t.m;
      if (homog_) m.e[ring_->h_index()] = 0;
      comps[t.pos].emplace_back(m, Rational(t.c) * scale);
    }
    ModuleElement out;
    for (auto& c : comps) out.push_back(WeylOperator::from_terms(user_ring_, std::move(c)));
    return out;
  }

  // Divides by the content and makes the leading coefficient positive.
  void make_primitive(IPoly& p, Rational* scale) const {
    if (p.zero()) return;
    Integer g = 0;
    for (const auto& t : p.t) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) break;
    }
    if (p.lead().c < 0) g = -g;
    if (g == 1) return;
    for (auto& t : p.t) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    if (scale) *scale /= Rational(g);
  }

  [[nodiscard]] Monomial quotient(const Monomial& a, const Monomial& b) const {
    Monomial r;
    for (std::size_t i = 0; i < nvars_; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    return r;
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }

 private:
  RingPtr user_ring_;
  RingPtr ring_;
  TermOrder order_;
  std::size_t rank_;
  bool homog_ = false;
  std::size_t klen_ = 0;
  std::size_t nrev_ = 0;
  std::size_t nvars_ = 0;
};

struct Basis {
  std::vector<IPoly> polys;
  std::vector<bool> active;
};

class Reducer {
 public:
  Reducer(const Engine& e, const Budget& budget, GrobnerBasis::Stats& stats)
      : e_(e), budget_(budget), stats_(stats) {}

  void tick() {
    ++stats_.reductions;
    if (budget_.max_steps && stats_.reductions > budget_.max_steps) throw BudgetExceeded(budget_.stage);
    if (budget_.deadline && (stats_.reductions & 15U) == 0 &&
        std::chrono::steady_clock::now() > *budget_.deadline)
      throw BudgetExceeded(budget_.stage);
  }

  void check_size(const IPoly& r) const {
    if (!budget_.max_coeff_bits || r.zero()) return;
    if (mpz_sizeinbase(r.lead().c.get_mpz_t(), 2) > budget_.max_coeff_bits) throw BudgetExceeded(budget_.stage);
  }

  [[nodiscard]] long find_divisor(const ITerm& t, const Basis& b, long skip) const {
    const std::uint32_t mask = slot_mask(t.m, e_.nvars());
    long best = -1;
    std::size_t best_len = 0;
    for (std::size_t k = 0; k < b.polys.size(); ++k) {
      if (!b.active[k] || static_cast<long>(k) == skip) continue;
      const IPoly& g = b.polys[k];
      if (g.lead().pos != t.pos || (g.lead_mask & ~mask) != 0 || !g.lead().m.divides(t.m)) continue;
      if (best < 0 || g.t.size() < best_len) {
        best = static_cast<long>(k);
        best_len = g.t.size();
      }
    }
    return best;
  }

  // Reduces r by b. Top reduction stops at the first irreducible term; full
  // reduction continues through the tail starting at index `from`.
  void reduce(IPoly& r, const Basis& b, bool full, std::size_t from = 0, long skip = -1,
              Rational* scale = nullptr) {
    std::size_t i = from;
    while (i < r.t.size()) {
      long d = find_divisor(r.t[i], b, skip);
      if (d < 0) {
        if (!full) break;
        ++i;
        continue;
      }
      tick();
      const IPoly& g = b.polys[static_cast<std::size_t>(d)];
      IPoly q = e_.mul_monomial(e_.quotient(r.t[i].m, g.lead().m), g);
      Integer gg;
      mpz_gcd(gg.get_mpz_t(), r.t[i].c.get_mpz_t(), g.lead().c.get_mpz_t());
      Integer a = g.lead().c / gg, bb = r.t[i].c / gg;
      if (a < 0) {
        a = -a;
        bb = -bb;
      }
      std::vector<ITerm> tail = e_.lin_comb(a, r.t, i, bb, q.t);
      r.t.resize(i);
      if (a != 1)
        for (auto& t : r.t) t.c *= a;
      r.t.insert(r.t.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
      r.sugar = std::max(r.sugar, q.sugar);
      if (scale) *scale *= Rational(a);
      if (i == 0 && (stats_.reductions & 7U) == 0) {
        e_.make_primitive(r, scale);
        check_size(r);
      }
    }
    e_.make_primitive(r, scale);
    check_size(r);
    e_.finish(r);
  }

 private:
  const Engine& e_;
  const Budget& budget_;
  GrobnerBasis::Stats& stats_;
};

struct GBState {
  explicit GBState(Engine e) : engine(std::move(e)) {}
  Engine engine;
  Basis basis;
  std::vector<ModuleElement> elements;
  GrobnerBasis::Stats stats;
  // degrevlex basis of the same module, used for normal forms under
  // orders that are not well-orders
  mutable std::once_flag reference_once;
  mutable std::shared_ptr<const GBState> reference;
};

namespace {

struct Pair {
  std::size_t i, j;
  ITerm lcm;
  unsigned sugar;
};

Monomial lcm_of(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

IPoly spoly(const Engine& e, const IPoly& f, const IPoly& g, const Monomial& L) {
  IPoly qf = e.mul_monomial(e.quotient(L, f.lead().m), f);
  IPoly qg = e.mul_monomial(e.quotient(L, g.lead().m), g);
  Integer gg;
  mpz_gcd(gg.get_mpz_t(), f.lead().c.get_mpz_t(), g.lead().c.get_mpz_t());
  Integer a = g.lead().c / gg, b = f.lead().c / gg;
  IPoly s;
  s.t = e.lin_comb(a, qf.t, 0, b, qg.t);
  s.sugar = std::max(qf.sugar, qg.sugar);
  return s;
}

class Buchberger {
 public:
  Buchberger(GBState& st, const Budget& budget) : st_(st), e_(st.engine), red_(e_, budget, st.stats) {}

  void run(const std::vector<IPoly>& input) {
    for (const auto& g : input) {
      IPoly r = g;
      red_.reduce(r, st_.basis, false);
      if (!r.zero()) add(std::move(r));
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (before(pairs_[k], pairs_[best])) best = k;
      Pair p = std::move(pairs_[best]);
      pairs_[best] = std::move(pairs_.back());
      pairs_.pop_back();
      ++st_.stats.pairs;
      IPoly s = spoly(e_, st_.basis.polys[p.i], st_.basis.polys[p.j], p.lcm.m);
      s.sugar = p.sugar;
      if (!s.t.empty()) red_.reduce(s, st_.basis, false);
      if (s.zero()) {
        ++st_.stats.zero_reductions;
        continue;
      }
      add(std::move(s));
    }
    interreduce();
  }

 private:
  [[nodiscard]] bool before(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = e_.cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  [[nodiscard]] bool commute(const IPoly& a, const IPoly& b) const {
    return (a.xmask & b.dmask) == 0 && (a.dmask & b.xmask) == 0;
  }

  void add(IPoly h) {
    auto& B = st_.basis;
    const std::size_t k = B.polys.size();
    const ITerm& hl = h.lead();
    struct Cand {
      Pair p;
      bool product;
      bool keep = true;
    };
    std::vector<Cand> cand;
    for (std::size_t i = 0; i < k; ++i) {
      if (!B.active[i]) continue;
      const IPoly& g = B.polys[i];
      if (g.lead().pos != hl.pos) continue;
      Pair p{i, k, {}, 0};
      p.lcm.m = lcm_of(g.lead().m, hl.m);
      p.lcm.pos = hl.pos;
      e_.set_key(p.lcm);
      unsigned d = p.lcm.m.degree();
      p.sugar = std::max(g.sugar + d - g.lead().m.degree(), h.sugar + d - hl.m.degree());
      bool prod = e_.rank() == 1 && coprime(g.lead().m, hl.m) && commute(g, h);
      cand.push_back({std::move(p), prod});
    }
    // chain criterion on the new pairs: a strictly dividing lcm wins
    for (auto& c : cand)
      for (const auto& o : cand)
        if (&o != &c && o.p.lcm.m.divides(c.p.lcm.m) && !(o.p.lcm.m == c.p.lcm.m)) {
          c.keep = false;
          break;
        }
    // equal lcms: keep one, none if any of them satisfies the product criterion
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (!cand[a].keep) continue;
      bool any_product = cand[a].product;
      for (std::size_t b = a + 1; b < cand.size(); ++b)
        if (cand[b].keep && cand[b].p.lcm.m == cand[a].p.lcm.m) {
          any_product = any_product || cand[b].product;
          cand[b].keep = false;
          ++st_.stats.chain_skipped;
        }
      if (any_product) {
        cand[a].keep = false;
        ++st_.stats.product_skipped;
      }
    }
    // chain criterion on the old pairs
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& p : pairs_) {
      const Monomial& L = p.lcm.m;
      bool drop = false;
      if (p.lcm.pos == hl.pos && hl.m.divides(L)) {
        Monomial li = lcm_of(B.polys[p.i].lead().m, hl.m);
        Monomial lj = lcm_of(B.polys[p.j].lead().m, hl.m);
        drop = !(li == L) && !(lj == L);
      }
      if (drop)
        ++st_.stats.chain_skipped;
      else
        kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    for (auto& c : cand)
      if (c.keep) pairs_.push_back(std::move(c.p));
    for (std::size_t i = 0; i < k; ++i)
      if (B.active[i] && B.polys[i].lead().pos == hl.pos && hl.m.divides(B.polys[i].lead().m))
        B.active[i] = false;
    B.polys.push_back(std::move(h));
    B.active.push_back(true);
  }

  void interreduce() {
    auto& B = st_.basis;
    Basis out;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < B.polys.size(); ++i)
      if (B.active[i]) idx.push_back(i);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return e_.cmp(B.polys[a].lead(), B.polys[b].lead()) < 0; });
    for (auto i : idx) {
      out.polys.push_back(std::move(B.polys[i]));
      out.active.push_back(true);
    }
    for (std::size_t i = 0; i < out.polys.size(); ++i)
      red_.reduce(out.polys[i], out, true, 1, static_cast<long>(i));
    B = std::move(out);
  }

  GBState& st_;
  const Engine& e_;
  Reducer red_;
  std::vector<Pair> pairs_;
};

}  // namespace
}  // namespace detail

using detail::GBState;

const RingPtr& GrobnerBasis::ring() const { return state_->engine.user_ring(); }
const TermOrder& GrobnerBasis::order() const { return state_->engine.order(); }
std::size_t GrobnerBasis::rank() const { return state_->engine.rank(); }
const std::vector<ModuleElement>& GrobnerBasis::elements() const { return state_->elements; }
const GrobnerBasis::Stats& GrobnerBasis::stats() const { return state_->stats; }

std::vector<WeylOperator> GrobnerBasis::ideal_elements() const {
  if (rank() != 1) throw RingError("ideal_elements on a module basis");
  std::vector<WeylOperator> out;
  for (const auto& e : elements()) out.push_back(e[0]);
  return out;
}

std::pair<std::size_t, Monomial> GrobnerBasis::leading(std::size_t i) const {
  const auto& lt = state_->basis.polys.at(i).lead();
  Monomial m = lt.m;
  if (state_->engine.homogenized()) m.e[state_->engine.ring()->h_index()] = 0;
  return {lt.pos, m};
}

ModuleElement GrobnerBasis::normal_form(const ModuleElement& g) const {
  if (state_->engine.homogenized()) {
    std::call_once(state_->reference_once, [this] {
      auto ref = buchberger(elements(), rank(), ring(), TermOrder{{}, order().module, order().positions_descending});
      state_->reference = ref.state_;
    });
    GrobnerBasis ref;
    ref.state_ = state_->reference;
    return ref.normal_form(g);
  }
  const auto& e = state_->engine;
  Rational scale;
  detail::IPoly p = e.to_internal(g, &scale);
  if (p.zero()) return g;
  GrobnerBasis::Stats stats;
  Budget unlimited;
  detail::Reducer red(e, unlimited, stats);
  red.reduce(p, state_->basis, true, 0, -1, &scale);
  ModuleElement r = e.to_external(p, false);
  for (auto& c : r) c *= Rational(1) / scale;
  return r;
}

WeylOperator GrobnerBasis::normal_form(const WeylOperator& g) const { return normal_form(ModuleElement{g})[0]; }

bool GrobnerBasis::contains(const ModuleElement& g) const { return is_zero(normal_form(g)); }
bool GrobnerBasis::contains(const WeylOperator& g) const { return normal_form(g).is_zero(); }

bool GrobnerBasis::verify_spairs() const {
  const auto& e = state_->engine;
  const auto& B = state_->basis;
  GrobnerBasis::Stats stats;
  Budget unlimited;
  detail::Reducer red(e, unlimited, stats);
  for (std::size_t i = 0; i < B.polys.size(); ++i)
    for (std::size_t j = i + 1; j < B.polys.size(); ++j) {
      if (B.polys[i].lead().pos != B.polys[j].lead().pos) continue;
      auto L = detail::lcm_of(B.polys[i].lead().m, B.polys[j].lead().m);
      detail::IPoly s = detail::spoly(e, B.polys[i], B.polys[j], L);
      red.reduce(s, B, true);
      if (!s.zero()) return false;
    }
  return true;
}

std::string module_element_str(const ModuleElement& v) {
  if (v.size() == 1) return v[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

std::string GrobnerBasis::str() const {
  std::ostringstream os;
  for (const auto& e : elements()) os << module_element_str(e) << '\n';
  return os.str();
}

ModuleElement unit_vector(const RingPtr& ring, std::size_t rank, std::size_t i) {
  ModuleElement v(rank, WeylOperator(ring));
  v.at(i) = WeylOperator::constant(ring, 1);
  return v;
}

bool is_zero(const ModuleElement& v) {
  return std::all_of(v.begin(), v.end(), [](const WeylOperator& c) { return c.is_zero(); });
}

GrobnerBasis buchberger(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring,
                        const TermOrder& order, const Budget& budget) {
  auto st = std::make_shared<GBState>(detail::Engine(ring, order, rank));
  std::vector<detail::IPoly> input;
  for (const auto& g : gens) {
    auto p = st->engine.to_internal(g);
    if (!p.zero()) input.push_back(std::move(p));
  }
  detail::Buchberger(*st, budget).run(input);
  const auto& e = st->engine;
  if (!e.homogenized()) {
    for (const auto& p : st->basis.polys) st->elements.push_back(e.to_external(p, true));
  } else {
    for (const auto& p : st->basis.polys) {
      auto v = e.to_external(p, true);
      if (std::find(st->elements.begin(), st->elements.end(), v) == st->elements.end())
        st->elements.push_back(std::move(v));
    }
  }
  GrobnerBasis gb;
  gb.state_ = std::move(st);
  return gb;
}

GrobnerBasis buchberger(const std::vector<WeylOperator>& gens, const TermOrder& order, const Budget& budget) {
  if (gens.empty()) throw RingError("buchberger: empty generator list");
  std::vector<ModuleElement> v;
  for (const auto& g : gens) v.push_back({g});
  return buchberger(v, 1, gens[0].ring(), order, budget);
}

std::vector<WeylOperator> eliminate(const std::vector<WeylOperator>& gens,
                                    const std::vector<std::size_t>& block_slots, const Budget& budget) {
  if (gens.empty()) return {};
  auto gb = buchberger(gens, TermOrder::eliminating(block_slots), budget);
  std::vector<WeylOperator> out;
  for (const auto& g : gb.ideal_elements()) {
    bool free = std::all_of(block_slots.begin(), block_slots.end(), [&](std::size_t s) { return g.free_of(s); });
    if (free) out.push_back(g);
  }
  return out;
}

namespace {

const RingPtr& ring_of(const std::vector<ModuleElement>& gens, const ModuleElement* extra) {
  if (extra && !extra->empty()) return extra->front().ring();
  for (const auto& g : gens)
    if (!g.empty()) return g.front().ring();
  throw RingError("cannot infer ring from empty input");
}

}  // namespace

std::vector<WeylOperator> kernel_of_cyclic_map(const std::vector<ModuleElement>& N, const ModuleElement& v,
                                               const Budget& budget) {
  const std::size_t r = v.size();
  const RingPtr& ring = ring_of(N, &v);
  std::vector<ModuleElement> gens;
  for (const auto& n : N) {
    if (n.size() != r) throw RingError("kernel_of_cyclic_map: rank mismatch");
    ModuleElement g = n;
    g.emplace_back(ring);
    gens.push_back(std::move(g));
  }
  ModuleElement gv = v;
  gv.push_back(WeylOperator::constant(ring, 1));
  gens.push_back(std::move(gv));
  auto gb = buchberger(gens, r + 1, ring, TermOrder::degrevlex(), budget);
  std::vector<WeylOperator> out;
  for (const auto& e : gb.elements()) {
    bool head_zero = std::all_of(e.begin(), e.begin() + static_cast<long>(r), [](const auto& c) { return c.is_zero(); });
    if (head_zero) out.push_back(e[r]);
  }
  return out;
}

std::vector<ModuleElement> syzygies(const std::vector<ModuleElement>& gens, const Budget& budget) {
  if (gens.empty()) return {};
  const std::size_t r = gens[0].size(), k = gens.size();
  const RingPtr& ring = ring_of(gens, nullptr);
  std::vector<ModuleElement> ext;
  for (std::size_t i = 0; i < k; ++i) {
    ModuleElement g = gens[i];
    if (g.size() != r) throw RingError("syzygies: rank mismatch");
    for (std::size_t j = 0; j < k; ++j) g.push_back(j == i ? WeylOperator::constant(ring, 1) : WeylOperator(ring));
    ext.push_back(std::move(g));
  }
  auto gb = buchberger(ext, r + k, ring, TermOrder::degrevlex(), budget);
  std::vector<ModuleElement> out;
  for (const auto& e : gb.elements()) {
    bool head_zero = std::all_of(e.begin(), e.begin() + static_cast<long>(r), [](const auto& c) { return c.is_zero(); });
    if (head_zero) out.emplace_back(e.begin() + static_cast<long>(r), e.end());
  }
  return out;
}

std::vector<ModuleElement> syzygies(const std::vector<WeylOperator>& gens, const Budget& budget) {
  std::vector<ModuleElement> v;
  for (const auto& g : gens) v.push_back({g});
  return syzygies(v, budget);
}

std::optional<std::vector<WeylOperator>> lift(const ModuleElement& target, const std::vector<ModuleElement>& gens,
                                              const Budget& budget) {
  const std::size_t r = target.size(), k = gens.size();
  const RingPtr& ring = target.at(0).ring();
  if (k == 0) {
    if (is_zero(target)) return std::vector<WeylOperator>{};
    return std::nullopt;
  }
  std::vector<ModuleElement> ext;
  for (std::size_t i = 0; i < k; ++i) {
    ModuleElement g = gens[i];
    for (std::size_t j = 0; j < k; ++j) g.push_back(j == i ? WeylOperator::constant(ring, 1) : WeylOperator(ring));
    ext.push_back(std::move(g));
  }
  auto gb = buchberger(ext, r + k, ring, TermOrder::degrevlex(), budget);
  ModuleElement t = target;
  for (std::size_t j = 0; j < k; ++j) t.emplace_back(ring);
  ModuleElement nf = gb.normal_form(t);
  for (std::size_t i = 0; i < r; ++i)
    if (!nf[i].is_zero()) return std::nullopt;
  // target - sum a_l G_l = nf, and each G_l = (sum C_li gens_i, C_l)
  std::vector<WeylOperator> q;
  for (std::size_t j = 0; j < k; ++j) q.push_back(-nf[r + j]);
  return q;
}

std::optional<std::vector<WeylOperator>> lift(const WeylOperator& target, const std::vector<WeylOperator>& gens,
                                              const Budget& budget) {
  std::vector<ModuleElement> v;
  for (const auto& g : gens) v.push_back({g});
  return lift(ModuleElement{target}, v, budget);
}

bool ideal_contains(const std::vector<WeylOperator>& gens, const WeylOperator& p, const Budget& budget) {
  if (p.is_zero()) return true;
  if (gens.empty()) return false;
  return buchberger(gens, TermOrder::degrevlex(), budget).contains(p);
}

bool ideals_equal(const std::vector<WeylOperator>& a, const std::vector<WeylOperator>& b, const Budget& budget) {
  auto nz = [](const std::vector<WeylOperator>& v) {
    std::vector<WeylOperator> r;
    for (const auto& g : v)
      if (!g.is_zero()) r.push_back(g);
    return r;
  };
  auto A = nz(a), B = nz(b);
  if (A.empty() || B.empty()) return A.empty() && B.empty();
  auto ga = buchberger(A, TermOrder::degrevlex(), budget);
  auto gb = buchberger(B, TermOrder::degrevlex(), budget);
  return std::all_of(B.begin(), B.end(), [&](const auto& g) { return ga.contains(g); }) &&
         std::all_of(A.begin(), A.end(), [&](const auto& g) { return gb.contains(g); });
}

bool modules_equal(const std::vector<ModuleElement>& a, const std::vector<ModuleElement>& b, std::size_t rank,
                   const Budget& budget) {
  auto nz = [](const std::vector<ModuleElement>& v) {
    std::vector<ModuleElement> r;
    for (const auto& g : v)
      if (!is_zero(g)) r.push_back(g);
    return r;
  };
  auto A = nz(a), B = nz(b);
  if (A.empty() || B.empty()) return A.empty() && B.empty();
  const RingPtr& ring = A[0][0].ring();
  auto ga = buchberger(A, rank, ring, TermOrder::degrevlex(), budget);
  auto gb = buchberger(B, rank, ring, TermOrder::degrevlex(), budget);
  return std::all_of(B.begin(), B.end(), [&](const auto& g) { return ga.contains(g); }) &&
         std::all_of(A.begin(), A.end(), [&](const auto& g) { return gb.contains(g); });
}

}  // namespace dmod
