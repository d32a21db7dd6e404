#include "dmod/bernstein.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dmod {

namespace {

using Poly = std::vector<Integer>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly shift(const Poly& a, unsigned d) {
  if (a.empty()) return a;
  Poly r(d, 0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

unsigned deg(const std::vector<unsigned>& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

bool divides(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

MonomialGens minimalize(MonomialGens g) {
  std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) {
    unsigned da = deg(a), db = deg(b);
    return da != db ? da < db : a < b;
  });
  g.erase(std::unique(g.begin(), g.end()), g.end());
  MonomialGens out;
  for (const auto& m : g)
    if (std::none_of(out.begin(), out.end(), [&](const auto& o) { return divides(o, m); })) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

class NumeratorCache {
 public:
  explicit NumeratorCache(std::size_t nvars) : nvars_(nvars) {}

  Poly get(const MonomialGens& minimal) {
    if (minimal.empty()) return {Integer(1)};
    if (deg(minimal.front()) == 0) return {};
    auto it = memo_.find(minimal);
    if (it != memo_.end()) return it->second;
    Poly r = compute(minimal);
    memo_.emplace(minimal, r);
    return r;
  }

 private:
  Poly compute(const MonomialGens& g) {
    std::vector<unsigned> count(nvars_, 0);
    for (const auto& m : g)
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i]) ++count[i];
    const auto best = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
    if (count[best] <= 1) {
      Poly r{Integer(1)};
      for (const auto& m : g) {
        Poly f(deg(m) + 1, 0);
        f[0] = 1;
        f[deg(m)] = -1;
        r = mul(r, f);
      }
      return r;
    }
    unsigned e = ~0U;
    for (const auto& m : g)
      if (m[best]) e = std::min(e, m[best]);
    std::vector<unsigned> p(nvars_, 0);
    p[best] = e;
    MonomialGens sum = g;
    sum.push_back(p);
    MonomialGens quot;
    for (auto m : g) {
      m[best] = m[best] > e ? m[best] - e : 0;
      quot.push_back(std::move(m));
    }
    return add(get(minimalize(std::move(sum))), shift(get(minimalize(std::move(quot))), e));
  }

  std::size_t nvars_;
  std::map<MonomialGens, Poly> memo_;
};

RationalUnivariate cumulative_binomial(unsigned i, std::size_t nvars) {
  // C(k - i + nvars, nvars)
  std::vector<Rational> roots;
  Integer fact = 1;
  for (std::size_t j = 1; j <= nvars; ++j) {
    roots.emplace_back(static_cast<long>(i) - static_cast<long>(j));
    fact *= static_cast<unsigned long>(j);
  }
  return Rational(1, 1) / Rational(fact) * RationalUnivariate::from_roots(roots, "k");
}

HilbertData from_numerator(const Poly& num, std::size_t nvars) {
  HilbertData h;
  if (num.empty()) return h;
  RationalUnivariate p("k");
  for (std::size_t i = 0; i < num.size(); ++i)
    if (num[i] != 0) p = p + Rational(num[i]) * cumulative_binomial(static_cast<unsigned>(i), nvars);
  h.hilbert_polynomial = p;
  h.dimension = p.degree();
  Rational m = p.leading();
  for (int j = 2; j <= h.dimension; ++j) m *= j;
  if (m.get_den() != 1 || m <= 0) throw std::logic_error("multiplicity is not a positive integer");
  h.multiplicity = m.get_num();
  const long top = static_cast<long>(num.size()) - 1 - static_cast<long>(nvars);
  h.threshold = top > 0 ? static_cast<unsigned>(top) : 0;
  return h;
}

void require_plain(const RingPtr& ring) {
  if (ring->has_t() || ring->homogenized() || !ring->params().empty())
    throw RingError("bernstein: presentation must be over D_X without t, s or h");
}

std::vector<unsigned> exponents(const RingContext& r, const Monomial& m) {
  std::vector<unsigned> e;
  for (std::size_t i = 0; i < r.n(); ++i) e.push_back(m.e[r.x_index(i)]);
  for (std::size_t i = 0; i < r.n(); ++i) e.push_back(m.e[r.d_index(i)]);
  return e;
}

}  // namespace

std::vector<Integer> hilbert_numerator(const MonomialGens& gens, std::size_t nvars) {
  for (const auto& g : gens)
    if (g.size() != nvars) throw std::invalid_argument("monomial generator has wrong number of exponents");
  NumeratorCache cache(nvars);
  return cache.get(minimalize(gens));
}

HilbertData hilbert_data_monomial(const MonomialGens& gens, std::size_t nvars) {
  return from_numerator(hilbert_numerator(gens, nvars), nvars);
}

RationalUnivariate hilbert_polynomial_monomial(const MonomialGens& gens, std::size_t nvars) {
  return hilbert_data_monomial(gens, nvars).hilbert_polynomial;
}

HilbertData bernstein_dimension_multiplicity(const std::vector<ModuleElement>& relations, std::size_t rank,
                                             const RingPtr& ring, const Budget& budget) {
  require_plain(ring);
  const std::size_t nv = 2 * ring->n();
  std::vector<MonomialGens> per(rank);
  std::vector<ModuleElement> nz;
  for (const auto& v : relations)
    if (!is_zero(v)) nz.push_back(v);
  if (!nz.empty()) {
    auto gb = buchberger(nz, rank, ring, TermOrder::total_degree_top(), budget.at("Bernstein filtration"));
    for (std::size_t i = 0; i < gb.size(); ++i) {
      auto [pos, m] = gb.leading(i);
      per.at(pos).push_back(exponents(*ring, m));
    }
  }
  Poly num;
  for (const auto& g : per) num = add(num, hilbert_numerator(g, nv));
  return from_numerator(num, nv);
}

HilbertData bernstein_dimension_multiplicity(const std::vector<WeylOperator>& ideal, const RingPtr& ring,
                                             const Budget& budget) {
  std::vector<ModuleElement> v;
  for (const auto& g : ideal) v.push_back({embed(g, ring)});
  return bernstein_dimension_multiplicity(v, 1, ring, budget);
}

bool is_holonomic(const std::vector<WeylOperator>& ideal, const RingPtr& ring, const Budget& budget) {
  auto h = bernstein_dimension_multiplicity(ideal, ring, budget);
  return h.zero_module() || h.dimension == static_cast<int>(ring->n());
}

}  // namespace dmod
