#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmod/weyl.hpp"

namespace dmod {

enum class ModuleOrder { PositionOverTerm, TermOverPosition };

/// Monomial order on (position, monomial): integer weight rows compared
/// lexicographically, then degrevlex on the slot layout. Rows are indexed by
/// slot and zero-padded. Orders with a negative weight are not well-orders;
/// they are computed in the homogenized algebra (total degree first) and
/// dehomogenized on output.
struct TermOrder {
  std::vector<std::vector<int>> rows;
  ModuleOrder module = ModuleOrder::PositionOverTerm;
  bool positions_descending = true;  // e_0 > e_1 > ...

  [[nodiscard]] bool needs_homogenization() const;

  static TermOrder degrevlex() { return {}; }
  static TermOrder weighted(std::vector<int> w);
  /// Any monomial containing a block slot exceeds every block-free monomial.
  static TermOrder eliminating(const std::vector<std::size_t>& block_slots);
  static TermOrder total_degree_top();
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& stage)
      : std::runtime_error("budget exceeded during " + stage), stage_(stage) {}
  [[nodiscard]] const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Work limit for one Groebner computation (reduction steps and coefficient
/// size) plus an optional wall-clock deadline shared by a whole pipeline.
struct Budget {
  std::size_t max_steps = 0;  // 0: unlimited
  std::size_t max_coeff_bits = 0;  // 0: unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::string stage = "groebner";

  [[nodiscard]] Budget at(std::string s) const {
    Budget b = *this;
    b.stage = std::move(s);
    return b;
  }
  static Budget seconds(double s);
};

using ModuleElement = std::vector<WeylOperator>;

namespace detail {
struct GBState;
}

/// Reduced Groebner basis of a left ideal (rank 1) or a left submodule of
/// D^rank. For orders that are not well-orders, elements() holds the
/// dehomogenized basis (monic, not interreduced) and normal forms are taken
/// with respect to a degrevlex basis of the same module.
class GrobnerBasis {
 public:
  GrobnerBasis() = default;

  [[nodiscard]] const RingPtr& ring() const;
  [[nodiscard]] const TermOrder& order() const;
  [[nodiscard]] std::size_t rank() const;
  [[nodiscard]] const std::vector<ModuleElement>& elements() const;
  /// Rank-1 view of elements().
  [[nodiscard]] std::vector<WeylOperator> ideal_elements() const;
  [[nodiscard]] std::size_t size() const { return elements().size(); }

  [[nodiscard]] ModuleElement normal_form(const ModuleElement& g) const;
  [[nodiscard]] WeylOperator normal_form(const WeylOperator& g) const;
  [[nodiscard]] bool contains(const ModuleElement& g) const;
  [[nodiscard]] bool contains(const WeylOperator& g) const;

  /// Position and monomial of the leading term of element i.
  [[nodiscard]] std::pair<std::size_t, Monomial> leading(std::size_t i) const;

  /// Re-checks the basis: every S-pair reduces to zero.
  [[nodiscard]] bool verify_spairs() const;

  [[nodiscard]] std::string str() const;

  /// Statistics of the run that produced the basis.
  struct Stats {
    std::size_t pairs = 0;
    std::size_t reductions = 0;
    std::size_t zero_reductions = 0;
    std::size_t chain_skipped = 0;
    std::size_t product_skipped = 0;
  };
  [[nodiscard]] const Stats& stats() const;

 private:
  friend GrobnerBasis buchberger(const std::vector<ModuleElement>&, std::size_t, const RingPtr&,
                                 const TermOrder&, const Budget&);
  std::shared_ptr<const detail::GBState> state_;
};

GrobnerBasis buchberger(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring,
                        const TermOrder& order, const Budget& budget = {});
GrobnerBasis buchberger(const std::vector<WeylOperator>& gens, const TermOrder& order,
                        const Budget& budget = {});

std::string module_element_str(const ModuleElement& v);
ModuleElement unit_vector(const RingPtr& ring, std::size_t rank, std::size_t i);
bool is_zero(const ModuleElement& v);

/// Generators of the ideal intersected with the subring free of the block.
std::vector<WeylOperator> eliminate(const std::vector<WeylOperator>& gens,
                                    const std::vector<std::size_t>& block_slots, const Budget& budget = {});

/// {P : P*v in N} for a submodule N of D^r.
std::vector<WeylOperator> kernel_of_cyclic_map(const std::vector<ModuleElement>& N, const ModuleElement& v,
                                               const Budget& budget = {});

/// Generators of {(Q_1..Q_k) : sum Q_i g_i = 0}.
std::vector<ModuleElement> syzygies(const std::vector<ModuleElement>& gens, const Budget& budget = {});
std::vector<ModuleElement> syzygies(const std::vector<WeylOperator>& gens, const Budget& budget = {});

/// Cofactors Q with sum Q_i gens_i = target, or nullopt if target is not in
/// the submodule.
std::optional<std::vector<WeylOperator>> lift(const ModuleElement& target,
                                              const std::vector<ModuleElement>& gens,
                                              const Budget& budget = {});
std::optional<std::vector<WeylOperator>> lift(const WeylOperator& target, const std::vector<WeylOperator>& gens,
                                              const Budget& budget = {});

bool ideal_contains(const std::vector<WeylOperator>& gens, const WeylOperator& p, const Budget& budget = {});
bool ideals_equal(const std::vector<WeylOperator>& a, const std::vector<WeylOperator>& b,
                  const Budget& budget = {});
bool modules_equal(const std::vector<ModuleElement>& a, const std::vector<ModuleElement>& b, std::size_t rank,
                   const Budget& budget = {});

}  // namespace dmod
