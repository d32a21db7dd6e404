#include "dmod/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmod::kernels {

namespace {

void accumulate_rows(const WeylOperator& p, const WeylOperator& q, std::size_t lo, std::size_t hi,
                     std::vector<WeylOperator::Term>& out) {
  const auto& ring = *p.ring();
  const auto& pt = p.terms();
  const auto& qt = q.terms();
  for (std::size_t i = lo; i < hi; ++i)
    for (const auto& [qm, qc] : qt) {
      Rational c = pt[i].second * qc;
      expand_monomial_product(ring, pt[i].first, qm, [&](const Monomial& m, const Integer& k) {
        out.emplace_back(m, k == 1 ? c : Rational(c * k));
      });
    }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

WeylOperator weyl_product_serial(const WeylOperator& p, const WeylOperator& q) {
  require_same_ring(p.ring(), q.ring(), "weyl_product");
  std::vector<WeylOperator::Term> out;
  out.reserve(p.size() * q.size());
  accumulate_rows(p, q, 0, p.size(), out);
  return WeylOperator::from_terms(p.ring(), std::move(out));
}

WeylOperator weyl_product_parallel(const WeylOperator& p, const WeylOperator& q) {
  require_same_ring(p.ring(), q.ring(), "weyl_product");
  const std::size_t rows = p.size();
  const int nt = max_threads();
  std::vector<std::vector<WeylOperator::Term>> parts(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
  {
#ifdef _OPENMP
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    const auto cnt = static_cast<std::size_t>(omp_get_num_threads());
#else
    const std::size_t tid = 0, cnt = 1;
#endif
    const std::size_t lo = rows * tid / cnt, hi = rows * (tid + 1) / cnt;
    accumulate_rows(p, q, lo, hi, parts[tid]);
  }
  std::vector<WeylOperator::Term> out;
  std::size_t total = 0;
  for (const auto& v : parts) total += v.size();
  out.reserve(total);
  for (auto& v : parts)
    for (auto& t : v) out.push_back(std::move(t));
  return WeylOperator::from_terms(p.ring(), std::move(out));
}

std::vector<WeylOperator> left_multiply_serial(const WeylOperator& factor,
                                               const std::vector<WeylOperator>& batch) {
  std::vector<WeylOperator> out;
  out.reserve(batch.size());
  for (const auto& g : batch) out.push_back(weyl_product_serial(factor, g));
  return out;
}

std::vector<WeylOperator> left_multiply_parallel(const WeylOperator& factor,
                                                 const std::vector<WeylOperator>& batch) {
  std::vector<WeylOperator> out(batch.size(), WeylOperator(factor.ring()));
  const auto n = static_cast<long>(batch.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = weyl_product_serial(factor, batch[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace dmod::kernels
