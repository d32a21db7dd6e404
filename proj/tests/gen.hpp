#pragma once

#include <random>

#include "dmod/weyl.hpp"

namespace dmod::gen {

// Random operators with small exponents and coefficients.
class OperatorGen {
 public:
  explicit OperatorGen(unsigned seed) : rng_(seed) {}

  WeylOperator op(const RingPtr& ring, int max_terms = 3, int max_exp = 2) {
    std::uniform_int_distribution<int> nt(0, max_terms), ex(0, max_exp), co(-5, 5), de(1, 3);
    std::vector<WeylOperator::Term> t;
    int k = nt(rng_);
    for (int i = 0; i < k; ++i) {
      Monomial m;
      for (std::size_t s = 0; s < ring->nvars(); ++s) m.e[s] = static_cast<std::uint16_t>(ex(rng_));
      Rational c(co(rng_), de(rng_));
      c.canonicalize();
      t.emplace_back(m, c);
    }
    return WeylOperator::from_terms(ring, std::move(t));
  }

  // Operator without t, dt and h exponents.
  WeylOperator base_op(const RingPtr& ring, int max_terms = 3, int max_exp = 2) {
    WeylOperator p = op(ring, max_terms, max_exp);
    std::vector<WeylOperator::Term> t;
    for (auto [m, c] : p.terms()) {
      if (ring->has_t()) {
        m.e[ring->x_index(ring->t_pair())] = 0;
        m.e[ring->d_index(ring->t_pair())] = 0;
      }
      if (ring->homogenized()) m.e[ring->h_index()] = 0;
      t.emplace_back(m, c);
    }
    return WeylOperator::from_terms(ring, std::move(t));
  }

  PolyWithParam poly(const RingPtr& ring, int max_terms = 3, int max_exp = 3) {
    WeylOperator p = op(ring, max_terms, max_exp);
    std::vector<WeylOperator::Term> t;
    for (auto [m, c] : p.terms()) {
      for (std::size_t i = 0; i < ring->pairs(); ++i) m.e[ring->d_index(i)] = 0;
      if (ring->has_t()) m.e[ring->x_index(ring->t_pair())] = 0;
      if (ring->homogenized()) m.e[ring->h_index()] = 0;
      t.emplace_back(m, c);
    }
    return PolyWithParam(WeylOperator::from_terms(ring, std::move(t)));
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937 rng_;
};

}  // namespace dmod::gen
