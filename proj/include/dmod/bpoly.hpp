#pragma once

#include <string>
#include <vector>

#include "dmod/weyl.hpp"

namespace dmod {

/// Univariate polynomial over Q, coefficients stored from degree 0 upward.
/// The zero polynomial has an empty coefficient vector.
class RationalUnivariate {
 public:
  explicit RationalUnivariate(std::string var = "s") : var_(std::move(var)) {}
  RationalUnivariate(std::vector<Rational> coeffs, std::string var = "s");

  static RationalUnivariate constant(const Rational& c, std::string var = "s");
  /// var - root
  static RationalUnivariate linear(const Rational& root, std::string var = "s");
  static RationalUnivariate from_roots(const std::vector<Rational>& roots, std::string var = "s");

  [[nodiscard]] const std::string& var() const { return var_; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return c_; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  [[nodiscard]] const Rational& leading() const;

  [[nodiscard]] RationalUnivariate monic() const;
  [[nodiscard]] Rational evaluate(const Rational& x) const;
  /// p(var + a)
  [[nodiscard]] RationalUnivariate compose_shift(const Rational& a) const;
  /// p(-var)
  [[nodiscard]] RationalUnivariate reflect() const;
  [[nodiscard]] RationalUnivariate derivative() const;
  [[nodiscard]] RationalUnivariate with_var(std::string var) const;

  /// Quotient and remainder; throws on division by zero.
  [[nodiscard]] std::pair<RationalUnivariate, RationalUnivariate> divmod(const RationalUnivariate& d) const;

  friend RationalUnivariate operator+(const RationalUnivariate& a, const RationalUnivariate& b);
  friend RationalUnivariate operator-(const RationalUnivariate& a, const RationalUnivariate& b);
  friend RationalUnivariate operator*(const RationalUnivariate& a, const RationalUnivariate& b);
  friend RationalUnivariate operator*(const Rational& k, const RationalUnivariate& a);
  friend bool operator==(const RationalUnivariate& a, const RationalUnivariate& b) { return a.c_ == b.c_; }

  /// Expanded form, highest degree first: "s^2+3*s+2".
  [[nodiscard]] std::string str() const;
  /// Rational linear factors and the remaining factor:
  /// "(s+1)^3*(s+2)^2*(s+2/3)^2".
  [[nodiscard]] std::string factored() const;

 private:
  void trim();
  std::vector<Rational> c_;
  std::string var_;
};

std::ostream& operator<<(std::ostream& os, const RationalUnivariate& p);

struct RationalRoot {
  Rational value;
  unsigned multiplicity = 1;
  friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

/// All rational roots with multiplicity, sorted by denominator ascending then
/// value descending.
std::vector<RationalRoot> rational_roots(const RationalUnivariate& b);

/// b divided by all its rational linear factors (monic).
RationalUnivariate rational_free_part(const RationalUnivariate& b);

/// Monic gcd; gcd(0, 0) = 0.
RationalUnivariate gcd(const RationalUnivariate& a, const RationalUnivariate& b);
RationalUnivariate squarefree_part(const RationalUnivariate& b);

/// Largest integer k >= 1 with b(lambda - k) = 0, else 0.
unsigned generator_level(const RationalUnivariate& b, const Rational& lambda);
/// Largest integer j >= 0 with b(-j) = 0, else -1.
int integration_level(const RationalUnivariate& b);

}  // namespace dmod
