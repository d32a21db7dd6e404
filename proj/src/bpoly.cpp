#include "dmod/bpoly.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dmod {

namespace {

// Prime factorization of |n| by trial division and Pollard-Brent.
void factor_into(Integer n, std::map<Integer, unsigned>& out);

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Integer& v) {
      Integer t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer d = x - y;
          q = (q * abs(d)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer d = x - ys;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  n = abs(n);
  if (n <= 1) return;
  for (unsigned long p = 2; p < 10000; ++p) {
    if (p * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<Integer> divisors(const Integer& n) {
  std::map<Integer, unsigned> f;
  factor_into(n, f);
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = ds.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// Integer coefficients of a positive multiple of p with content 1.
std::vector<Integer> primitive_integer_form(const RationalUnivariate& p) {
  Integer den = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    out.push_back(c.get_num() * (den / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (p.leading() < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

void format_coeff_term(std::ostringstream& os, const Rational& c, const std::string& mono, bool first) {
  if (mono.empty()) {
    if (!first && c > 0) os << '+';
    os << c;
    return;
  }
  if (c == 1) {
    if (!first) os << '+';
  } else if (c == -1) {
    os << '-';
  } else {
    if (!first && c > 0) os << '+';
    os << c << '*';
  }
  os << mono;
}

std::string linear_factor(const std::string& var, const Rational& root) {
  if (root == 0) return var;
  std::ostringstream os;
  os << '(' << var << (root < 0 ? "+" : "-") << abs(root) << ')';
  return os.str();
}

bool root_order(const RationalRoot& a, const RationalRoot& b) {
  int c = cmp(a.value.get_den(), b.value.get_den());
  if (c != 0) return c < 0;
  return a.value > b.value;
}

}  // namespace

RationalUnivariate::RationalUnivariate(std::vector<Rational> coeffs, std::string var)
    : c_(std::move(coeffs)), var_(std::move(var)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void RationalUnivariate::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RationalUnivariate RationalUnivariate::constant(const Rational& c, std::string var) {
  return RationalUnivariate(std::vector<Rational>{c}, std::move(var));
}

RationalUnivariate RationalUnivariate::linear(const Rational& root, std::string var) {
  return RationalUnivariate(std::vector<Rational>{-root, 1}, std::move(var));
}

RationalUnivariate RationalUnivariate::from_roots(const std::vector<Rational>& roots, std::string var) {
  RationalUnivariate p = constant(1, var);
  for (const auto& r : roots) p = p * linear(r, var);
  return p;
}

const Rational& RationalUnivariate::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return c_.back();
}

RationalUnivariate RationalUnivariate::monic() const {
  if (is_zero()) return *this;
  return (Rational(1) / leading()) * *this;
}

Rational RationalUnivariate::evaluate(const Rational& x) const {
  Rational v = 0;
  for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

RationalUnivariate RationalUnivariate::compose_shift(const Rational& a) const {
  // Horner with the polynomial var + a
  RationalUnivariate shifted(std::vector<Rational>{a, 1}, var_);
  RationalUnivariate v(var_);
  for (std::size_t i = c_.size(); i-- > 0;) v = v * shifted + constant(c_[i], var_);
  return v;
}

RationalUnivariate RationalUnivariate::reflect() const {
  std::vector<Rational> c = c_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return RationalUnivariate(std::move(c), var_);
}

RationalUnivariate RationalUnivariate::derivative() const {
  std::vector<Rational> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
  return RationalUnivariate(std::move(c), var_);
}

RationalUnivariate RationalUnivariate::with_var(std::string var) const {
  RationalUnivariate p = *this;
  p.var_ = std::move(var);
  return p;
}

std::pair<RationalUnivariate, RationalUnivariate> RationalUnivariate::divmod(const RationalUnivariate& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  RationalUnivariate r = *this;
  if (degree() < d.degree()) return {RationalUnivariate(var_), r};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - d.degree() + 1));
  const Rational& lc = d.leading();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - d.degree());
    Rational f = r.leading() / lc;
    q[shift] = f;
    for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[i + shift] -= f * d.c_[i];
    r.c_.back() = 0;
    r.trim();
  }
  return {RationalUnivariate(std::move(q), var_), r};
}

RationalUnivariate operator+(const RationalUnivariate& a, const RationalUnivariate& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return RationalUnivariate(std::move(c), a.var_);
}

RationalUnivariate operator-(const RationalUnivariate& a, const RationalUnivariate& b) {
  return a + Rational(-1) * b;
}

RationalUnivariate operator*(const RationalUnivariate& a, const RationalUnivariate& b) {
  if (a.is_zero() || b.is_zero()) return RationalUnivariate(a.var_);
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RationalUnivariate(std::move(c), a.var_);
}

RationalUnivariate operator*(const Rational& k, const RationalUnivariate& a) {
  std::vector<Rational> c = a.c_;
  for (auto& v : c) v *= k;
  return RationalUnivariate(std::move(c), a.var_);
}

std::string RationalUnivariate::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    std::string mono = i == 0 ? "" : i == 1 ? var_ : var_ + "^" + std::to_string(i);
    format_coeff_term(os, c_[i], mono, first);
    first = false;
  }
  return os.str();
}

std::string RationalUnivariate::factored() const {
  if (is_zero()) return "0";
  if (degree() == 0) return c_[0].get_str();
  std::vector<std::string> parts;
  const Rational lc = leading();
  for (const auto& r : rational_roots(*this)) {
    std::string f = linear_factor(var_, r.value);
    if (r.multiplicity > 1) f += "^" + std::to_string(r.multiplicity);
    parts.push_back(std::move(f));
  }
  RationalUnivariate rest = rational_free_part(*this);
  if (rest.degree() > 0) parts.push_back("(" + rest.str() + ")");
  std::string out;
  if (lc == -1)
    out = "-";
  else if (lc != 1)
    out = lc.get_str() + "*";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out;
}

std::ostream& operator<<(std::ostream& os, const RationalUnivariate& p) { return os << p.str(); }

std::vector<RationalRoot> rational_roots(const RationalUnivariate& b) {
  if (b.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
  std::vector<RationalRoot> out;
  RationalUnivariate p = b.monic();
  unsigned zero_mult = 0;
  while (p.degree() > 0 && p.coeff(0) == 0) {
    p = p.divmod(RationalUnivariate(std::vector<Rational>{0, 1}, p.var())).first;
    ++zero_mult;
  }
  if (zero_mult) out.push_back({Rational(0), zero_mult});
  if (p.degree() > 0) {
    // candidates come from the squarefree part, whose coefficients are smaller
    RationalUnivariate sq = squarefree_part(p);
    auto z = primitive_integer_form(sq);
    auto nums = divisors(z.front());
    auto dens = divisors(z.back());
    std::vector<Rational> cands;
    for (const auto& q : dens)
      for (const auto& n : nums) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
        if (g != 1) continue;
        cands.emplace_back(n, q);
        cands.emplace_back(-n, q);
      }
    for (auto& c : cands) c.canonicalize();
    for (const auto& c : cands) {
      if (sq.evaluate(c) != 0) continue;
      unsigned m = 0;
      RationalUnivariate lin = RationalUnivariate::linear(c, p.var());
      for (;;) {
        auto [q, r] = p.divmod(lin);
        if (!r.is_zero()) break;
        p = q;
        ++m;
      }
      out.push_back({c, m});
    }
  }
  std::sort(out.begin(), out.end(), root_order);
  return out;
}

RationalUnivariate rational_free_part(const RationalUnivariate& b) {
  RationalUnivariate p = b.monic();
  for (const auto& r : rational_roots(b))
    for (unsigned k = 0; k < r.multiplicity; ++k) p = p.divmod(RationalUnivariate::linear(r.value, b.var())).first;
  return p;
}

RationalUnivariate gcd(const RationalUnivariate& a, const RationalUnivariate& b) {
  RationalUnivariate x = a, y = b;
  while (!y.is_zero()) {
    auto r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RationalUnivariate squarefree_part(const RationalUnivariate& b) {
  if (b.is_zero()) throw std::domain_error("squarefree_part of the zero polynomial");
  if (b.degree() == 0) return RationalUnivariate::constant(1, b.var());
  return b.divmod(gcd(b, b.derivative())).first.monic();
}

unsigned generator_level(const RationalUnivariate& b, const Rational& lambda) {
  unsigned best = 0;
  for (const auto& r : rational_roots(b)) {
    Rational k = lambda - r.value;
    if (k.get_den() == 1 && k > 0) best = std::max(best, static_cast<unsigned>(k.get_num().get_ui()));
  }
  return best;
}

int integration_level(const RationalUnivariate& b) {
  int best = -1;
  for (const auto& r : rational_roots(b)) {
    Rational j = -r.value;
    if (j.get_den() == 1 && j >= 0) best = std::max(best, static_cast<int>(j.get_num().get_si()));
  }
  return best;
}

}  // namespace dmod
