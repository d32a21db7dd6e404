#pragma once

#include <cstddef>
#include <vector>

#include "dmod/weyl.hpp"

// Data-parallel kernels. Each OpenMP kernel has a serial twin that is the
// reference implementation in tests; coefficients are exact, so both must
// agree term for term.
namespace dmod::kernels {

WeylOperator weyl_product_serial(const WeylOperator& p, const WeylOperator& q);
WeylOperator weyl_product_parallel(const WeylOperator& p, const WeylOperator& q);

/// Left-multiplies every operator of a batch by the same factor.
std::vector<WeylOperator> left_multiply_serial(const WeylOperator& factor,
                                               const std::vector<WeylOperator>& batch);
std::vector<WeylOperator> left_multiply_parallel(const WeylOperator& factor,
                                                 const std::vector<WeylOperator>& batch);

/// Number of term pairs above which normal_product switches to the parallel
/// kernel (only when more than one OpenMP thread is available).
inline constexpr std::size_t kParallelProductThreshold = 4096;

int max_threads();

}  // namespace dmod::kernels
