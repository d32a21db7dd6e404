#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dmod/ring.hpp"

namespace dmod {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical storage order: total degree, then reverse lexicographic on the
/// slot layout. Returns true when a is strictly greater than b.
bool canonical_greater(const Monomial& a, const Monomial& b);

/// Exact element of the (extended) Weyl algebra in normal order
/// x^a t^k d^b dt^l s^e h^m. Terms are kept sorted by canonical_greater with
/// no zero coefficients, so equality is termwise.
class WeylOperator {
 public:
  using Term = std::pair<Monomial, Rational>;

  explicit WeylOperator(RingPtr ring) : ring_(std::move(ring)) {}

  static WeylOperator constant(RingPtr ring, const Rational& c);
  static WeylOperator variable(RingPtr ring, std::string_view name);
  static WeylOperator monomial(RingPtr ring, const Monomial& m, const Rational& c = 1);
  /// Combines like terms and drops zeros; input order is irrelevant.
  static WeylOperator from_terms(RingPtr ring, std::vector<Term> terms);

  [[nodiscard]] const RingPtr& ring() const { return ring_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_constant() const;
  /// Largest total degree among the terms; -1 for zero.
  [[nodiscard]] int degree() const;
  /// Exponent of a given slot is zero in every term.
  [[nodiscard]] bool free_of(std::size_t slot) const;

  WeylOperator& operator+=(const WeylOperator& o);
  WeylOperator& operator-=(const WeylOperator& o);
  WeylOperator& operator*=(const Rational& c);

  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
  friend WeylOperator operator-(WeylOperator a) { return a *= Rational(-1); }
  friend WeylOperator operator*(WeylOperator a, const Rational& c) { return a *= c; }
  friend WeylOperator operator*(const Rational& c, WeylOperator a) { return a *= c; }
  friend bool operator==(const WeylOperator& a, const WeylOperator& b);

  [[nodiscard]] std::string str() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const WeylOperator& p);

WeylOperator add(const WeylOperator& p, const WeylOperator& q);

/// Product in normal order via the closed-form Leibniz expansion
/// d^b x^c = sum_v C(b,v) C(c,v) v! x^(c-v) d^(b-v) (times h^(2v) when
/// homogenized), taken pair by pair.
WeylOperator normal_product(const WeylOperator& p, const WeylOperator& q);
WeylOperator operator*(const WeylOperator& p, const WeylOperator& q);

/// C(b,v) * C(c,v) * v!, the Leibniz coefficient for one Weyl pair.
Integer leibniz_coefficient(unsigned b, unsigned c, unsigned v);

namespace detail {
inline constexpr unsigned kLeibnizTable = 32;
/// Row v = 0..min(b,c) of Leibniz coefficients; b, c < kLeibnizTable.
const Integer* leibniz_row(unsigned b, unsigned c);
}  // namespace detail

/// Expands the product of two monomials; emit(monomial, coefficient)
/// receives each term of a*b with its positive integer coefficient.
template <class Emit>
void expand_monomial_product(const RingContext& ring, const Monomial& a, const Monomial& b, Emit&& emit) {
  Monomial base = a + b;
  const std::size_t pairs = ring.pairs();
  std::size_t active[kMaxVars];
  unsigned lim[kMaxVars];
  std::size_t na = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    unsigned bi = a.e[ring.d_index(i)], ci = b.e[ring.x_index(i)];
    unsigned l = bi < ci ? bi : ci;
    if (l > 0) {
      active[na] = i;
      lim[na] = l;
      ++na;
    }
  }
  if (na == 0) {
    emit(base, Integer(1));
    return;
  }
  const std::size_t hslot = ring.homogenized() ? ring.h_index() : kMaxVars;
  unsigned nu[kMaxVars] = {};
  Monomial m;
  Integer c;
  for (;;) {
    m = base;
    c = 1;
    unsigned total = 0;
    for (std::size_t k = 0; k < na; ++k) {
      std::size_t i = active[k];
      unsigned bi = a.e[ring.d_index(i)], ci = b.e[ring.x_index(i)];
      m.e[ring.x_index(i)] = static_cast<std::uint16_t>(m.e[ring.x_index(i)] - nu[k]);
      m.e[ring.d_index(i)] = static_cast<std::uint16_t>(m.e[ring.d_index(i)] - nu[k]);
      total += nu[k];
      if (nu[k] > 0) {
        if (bi < detail::kLeibnizTable && ci < detail::kLeibnizTable)
          c *= detail::leibniz_row(bi, ci)[nu[k]];
        else
          c *= leibniz_coefficient(bi, ci, nu[k]);
      }
    }
    if (hslot < kMaxVars) m.e[hslot] = static_cast<std::uint16_t>(m.e[hslot] + 2 * total);
    emit(m, c);
    std::size_t k = 0;
    while (k < na && nu[k] == lim[k]) nu[k++] = 0;
    if (k == na) break;
    ++nu[k];
  }
}

WeylOperator power(const WeylOperator& p, unsigned k);

/// Commutative polynomial in x (and central parameters such as s); a Weyl
/// operator with no d, t or h exponents.
class PolyWithParam {
 public:
  explicit PolyWithParam(RingPtr ring) : op_(std::move(ring)) {}
  explicit PolyWithParam(WeylOperator op);

  static PolyWithParam constant(RingPtr ring, const Rational& c) {
    return PolyWithParam(WeylOperator::constant(std::move(ring), c));
  }

  [[nodiscard]] const RingPtr& ring() const { return op_.ring(); }
  [[nodiscard]] const WeylOperator& op() const { return op_; }
  [[nodiscard]] bool is_zero() const { return op_.is_zero(); }
  [[nodiscard]] bool is_constant() const { return op_.is_constant(); }

  /// Partial derivative with respect to the x-variable of pair i.
  [[nodiscard]] PolyWithParam derivative(std::size_t pair) const;
  /// Substitutes param -> param + shift.
  [[nodiscard]] PolyWithParam shift_param(std::size_t slot, const Rational& shift) const;
  /// Exact quotient, or nullopt when f does not divide.
  [[nodiscard]] std::optional<PolyWithParam> divide_exact(const PolyWithParam& f) const;
  /// Re-expresses the polynomial in another ring with compatible names.
  [[nodiscard]] PolyWithParam in_ring(const RingPtr& target) const;

  friend PolyWithParam operator+(const PolyWithParam& a, const PolyWithParam& b) { return PolyWithParam(a.op_ + b.op_); }
  friend PolyWithParam operator-(const PolyWithParam& a, const PolyWithParam& b) { return PolyWithParam(a.op_ - b.op_); }
  friend PolyWithParam operator*(const PolyWithParam& a, const PolyWithParam& b) { return PolyWithParam(a.op_ * b.op_); }
  friend PolyWithParam operator*(const Rational& c, const PolyWithParam& a) { return PolyWithParam(c * a.op_); }
  friend bool operator==(const PolyWithParam& a, const PolyWithParam& b) { return a.op_ == b.op_; }

  [[nodiscard]] std::string str() const { return op_.str(); }

 private:
  WeylOperator op_;
};

/// Natural action of an operator without t, dt, h on a polynomial.
PolyWithParam apply_to_poly(const WeylOperator& p, const PolyWithParam& g);

/// Maps an operator into a ring that shares variable names; every variable
/// with a nonzero exponent must exist in the target.
WeylOperator embed(const WeylOperator& p, const RingPtr& target);

/// Ring homomorphism D_X -> D_Y, d_i -> d_i - f_i dt t^2 (tf = 1 side).
WeylOperator tau(const WeylOperator& p, const PolyWithParam& f);
/// Ring homomorphism D_X -> D_Y, d_i -> d_i + f_i dt (t = f side).
WeylOperator tau_prime(const WeylOperator& p, const PolyWithParam& f);
/// Automorphism t -> dt, dt -> -t.
WeylOperator fourier_t(const WeylOperator& p);

/// Rewrites a weight-zero operator (equal t and dt exponents in every term)
/// as an element of D_X[s] using t^k dt^k = (-1)^k (s+1)(s+2)...(s+k),
/// i.e. s = -dt t.
WeylOperator theta_to_s(const WeylOperator& p);
/// Inverse direction: substitutes s -> -dt t into a ring with t.
WeylOperator s_to_theta(const WeylOperator& p);

/// Substitutes a central parameter by a rational value; the parameter is
/// dropped from the ring.
WeylOperator substitute_param(const WeylOperator& p, std::string_view name, const Rational& value);

/// Homogenizes with h to total degree deg(p) (all non-h variables weight 1).
WeylOperator homogenize(const WeylOperator& p, const RingPtr& homog_ring);
/// Sets h = 1.
WeylOperator dehomogenize(const WeylOperator& p, const RingPtr& plain_ring);

/// Weight of a monomial for the integer weight vector indexed by slot.
long weight_of(const Monomial& m, const std::vector<int>& w);

}  // namespace dmod
