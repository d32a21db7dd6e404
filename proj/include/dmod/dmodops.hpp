#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmod/bpoly.hpp"
#include "dmod/gb.hpp"
#include "dmod/weyl.hpp"

namespace dmod {

/// M = D_X / I, generated by the residue class u of 1.
struct CyclicDMod {
  RingPtr ring;
  std::vector<WeylOperator> ideal;
  std::string label = "u";

  CyclicDMod(RingPtr r, std::vector<WeylOperator> gens, std::string name = "u");
};

/// Raised when an algorithm needs a b-function that does not exist.
class NoBFunction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed; indicates a bug, not bad input.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a(x,s) f^(-k) f^s in K[x, f^-1, s] f^s, kept with k >= 0 and f not
/// dividing a when k > 0.
class LSymbol {
 public:
  /// a lives in D_X[s] (no d, t or h exponents); f in D_X.
  LSymbol(PolyWithParam a, long k, PolyWithParam f);

  [[nodiscard]] const PolyWithParam& numerator() const { return a_; }
  [[nodiscard]] long order() const { return k_; }
  [[nodiscard]] const PolyWithParam& f() const { return f_; }
  [[nodiscard]] bool is_zero() const { return a_.is_zero(); }

  /// a(x,s) f^-k f^s -> a(x,s+1) f^(-k+1) f^s and its inverse.
  [[nodiscard]] LSymbol t_shift() const;
  [[nodiscard]] LSymbol t_shift_inverse() const;

  friend LSymbol operator+(const LSymbol& a, const LSymbol& b);
  friend bool operator==(const LSymbol& a, const LSymbol& b) { return a.k_ == b.k_ && a.a_ == b.a_; }
  [[nodiscard]] std::string str() const;

 private:
  void canonicalize();
  PolyWithParam a_;
  long k_;
  PolyWithParam f_;
};

/// Exact action of P in D_X[s] on L = K[x, f^-1, s] f^s.
LSymbol oracle_apply(const WeylOperator& P, const LSymbol& v);

/// Ring D_X[s] for a base ring D_X.
RingPtr param_ring(const RingPtr& base);

/// <tau'(P) : P in I> + <t - f> in D_Y, Y = X x K_t.
std::vector<WeylOperator> malgrange_ideal(const CyclicDMod& M, const PolyWithParam& f);
/// <tau(P) : P in I> + <t f - 1> in D_Y.
std::vector<WeylOperator> localization_ideal(const CyclicDMod& M, const PolyWithParam& f);

/// Generators of J intersected with D_X[dt t], rewritten in D_X[s] with
/// s = -dt t. J lives in D_Y.
std::vector<WeylOperator> weight_zero_part(const std::vector<WeylOperator>& J, const Budget& budget = {});

/// Generator of in_{(-w,w)}(J) intersected with K[dt t] for the weight
/// t:1, dt:-1, as a polynomial in sigma = dt t (printed with variable s).
/// Throws NoBFunction when the intersection is zero.
RationalUnivariate weight_bfunction(const std::vector<WeylOperator>& J, const Budget& budget = {});

/// Finitely presented module D^rank / <relations>.
struct Presentation {
  RingPtr ring;
  std::size_t rank = 0;
  std::vector<ModuleElement> relations;
  /// When the module is cyclic on a known generator: its annihilator.
  std::optional<std::vector<WeylOperator>> cyclic_annihilator;
  std::string cyclic_label;

  [[nodiscard]] bool is_zero(const Budget& budget = {}) const;
};

struct LocalizationResult {
  /// Integration b-function in sigma = dt t.
  RationalUnivariate integration_bfunction;
  /// Generators are u (x) f^-j for 0 <= j <= k0; k0 = -1 when M[f^-1] = 0.
  int k0 = -1;
  std::vector<std::string> labels;
  /// M[f^-1] = D^(k0+1) / N.
  Presentation localized;
  /// Ann of iota(u), so iota(M) = D / iota_annihilator.
  std::vector<WeylOperator> iota_annihilator;
  /// Smallest j such that u (x) f^-j generates M[f^-1], with its annihilator.
  std::size_t generator_index = 0;
  std::vector<WeylOperator> generator_annihilator;
  Presentation h0;
  Presentation h1;
};

LocalizationResult localize(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget = {});

/// H^0_(f)(M) = 0, decided by comparing I with Ann iota(u).
bool is_f_saturated(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget = {});

struct ParamAnnihilator {
  RingPtr ring;  // D_X[s]
  std::vector<WeylOperator> generators;
  PolyWithParam f;
  bool via_localization = true;
  /// False when M was not checked to be holonomic, so termination and the
  /// theory behind the result are not guaranteed.
  bool holonomicity_verified = false;
};

/// Ann_{D_X[s]}(u (x) f^s), computed on iota(M).
ParamAnnihilator ann_fs(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget = {});

struct BFunctionResult {
  bool exists = false;
  RationalUnivariate b;
};

BFunctionResult bfunction(const CyclicDMod& M, const PolyWithParam& f, const Budget& budget = {});
/// The b-function from an already computed annihilator.
RationalUnivariate bfunction_from_annihilator(const ParamAnnihilator& ann, const Budget& budget = {});

/// Operator P(s) with b(s) - P(s) f in the annihilator, if any.
std::optional<WeylOperator> functional_equation_operator(const ParamAnnihilator& ann, const RationalUnivariate& b,
                                                         const Budget& budget = {});

/// b(s) lies in Ann + D[s] f; for M = K[x] the identity
/// P(s) f^(s+1) = b(s) f^s is also re-derived with oracle_apply.
bool verify_functional_equation(const CyclicDMod& M, const ParamAnnihilator& ann, const RationalUnivariate& b,
                                const Budget& budget = {});
/// No proper divisor b / (s - r) over a rational root r passes membership.
bool verify_minimality(const ParamAnnihilator& ann, const RationalUnivariate& b, const Budget& budget = {});

/// Ann_{D_X}(u (x) f^lambda).
std::vector<WeylOperator> lambda_module(const CyclicDMod& M, const PolyWithParam& f, const Rational& lambda,
                                        const Budget& budget = {});
std::vector<WeylOperator> lambda_module(const ParamAnnihilator& ann, const RationalUnivariate& b,
                                        const Rational& lambda, const Budget& budget = {});

/// True iff b(lambda - k) != 0 for every positive integer k, i.e.
/// u (x) f^lambda generates M[f^-1].
bool generation_check(const RationalUnivariate& b, const Rational& lambda);

/// Polynomial in the central parameter at `slot` of an operator that has no
/// other variables.
RationalUnivariate to_univariate(const WeylOperator& p, std::size_t slot, const std::string& var = "s");

/// Reduced degrevlex basis, used to print ideals canonically.
std::vector<WeylOperator> reduced_basis(const std::vector<WeylOperator>& gens, const Budget& budget = {});

/// M = D_X / I is K[x], i.e. I = <dx_1, ..., dx_n>.
bool is_polynomial_module(const CyclicDMod& M, const Budget& budget = {});

}  // namespace dmod
