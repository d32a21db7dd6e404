#pragma once

#include <vector>

#include "dmod/bpoly.hpp"
#include "dmod/gb.hpp"

namespace dmod {

/// Exponent vectors of the generators of a commutative monomial ideal.
using MonomialGens = std::vector<std::vector<unsigned>>;

struct HilbertData {
  /// -1 for the zero module.
  int dimension = -1;
  /// dimension! times the leading coefficient; 0 for the zero module.
  Integer multiplicity = 0;
  /// p(k) = dim_K F_k for k >= threshold, in the variable k.
  RationalUnivariate hilbert_polynomial{"k"};
  unsigned threshold = 0;

  [[nodiscard]] bool zero_module() const { return dimension < 0; }
};

/// Numerator N(t) of the Hilbert series of K[z_1..z_nvars]/I, so that the
/// series is N(t) / (1-t)^nvars. Coefficients from degree 0 upward.
std::vector<Integer> hilbert_numerator(const MonomialGens& gens, std::size_t nvars);

/// Number of standard monomials of total degree <= k, as a polynomial in k.
HilbertData hilbert_data_monomial(const MonomialGens& gens, std::size_t nvars);
RationalUnivariate hilbert_polynomial_monomial(const MonomialGens& gens, std::size_t nvars);

/// Dimension and multiplicity of D_X / I for the Bernstein filtration.
HilbertData bernstein_dimension_multiplicity(const std::vector<WeylOperator>& ideal, const RingPtr& ring,
                                             const Budget& budget = {});
/// Same for D_X^rank / N, every generator in filtration degree 0.
HilbertData bernstein_dimension_multiplicity(const std::vector<ModuleElement>& relations, std::size_t rank,
                                             const RingPtr& ring, const Budget& budget = {});

/// Dimension n, or the zero module.
bool is_holonomic(const std::vector<WeylOperator>& ideal, const RingPtr& ring, const Budget& budget = {});

}  // namespace dmod
