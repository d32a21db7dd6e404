#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dmod {

/// Upper bound on the number of exponent slots of a ring (x, d, params, h).
inline constexpr std::size_t kMaxVars = 16;

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent vector laid out as [x_0..x_{m-1}, d_0..d_{m-1}, params..., h].
/// The layout is fixed by the owning RingContext; unused slots stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  friend bool operator==(const Monomial&, const Monomial&) = default;

  [[nodiscard]] unsigned degree() const {
    unsigned d = 0;
    for (auto v : e) d += v;
    return d;
  }
  [[nodiscard]] bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > other.e[i]) return false;
    return true;
  }
};

Monomial operator+(const Monomial& a, const Monomial& b);

class RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

/// Polynomial Weyl algebra D_n, optionally extended by one more Weyl pair
/// (t, dt), central commuting parameters (s, ...) and the homogenizing
/// variable h with dx*x = x*dx + h^2.
class RingContext {
 public:
  RingContext(std::vector<std::string> xs, bool with_t,
              std::vector<std::string> params = {}, bool homogenized = false);

  static RingPtr make(std::vector<std::string> xs, bool with_t = false,
                      std::vector<std::string> params = {},
                      bool homogenized = false);

  /// Number of base x-variables (excluding t).
  [[nodiscard]] std::size_t n() const { return xs_.size(); }
  /// Number of Weyl pairs including t.
  [[nodiscard]] std::size_t pairs() const { return xs_.size() + (with_t_ ? 1 : 0); }
  [[nodiscard]] bool has_t() const { return with_t_; }
  [[nodiscard]] bool homogenized() const { return homogenized_; }
  [[nodiscard]] const std::vector<std::string>& xs() const { return xs_; }
  [[nodiscard]] const std::vector<std::string>& params() const { return params_; }

  [[nodiscard]] std::size_t nvars() const { return 2 * pairs() + params_.size() + (homogenized_ ? 1 : 0); }
  [[nodiscard]] std::size_t x_index(std::size_t pair) const { return pair; }
  [[nodiscard]] std::size_t d_index(std::size_t pair) const { return pairs() + pair; }
  [[nodiscard]] std::size_t t_pair() const;
  [[nodiscard]] std::size_t param_index(std::size_t k) const { return 2 * pairs() + k; }
  [[nodiscard]] std::size_t h_index() const;
  [[nodiscard]] std::optional<std::size_t> param_slot(std::string_view name) const;

  /// Slot of a variable by its printed name ("x", "dx", "t", "dt", "s", "h").
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
  [[nodiscard]] std::string var_name(std::size_t slot) const;

  /// Name of pair i as printed ("x", ..., "t").
  [[nodiscard]] std::string pair_name(std::size_t pair) const;

  [[nodiscard]] RingPtr with_t() const;
  [[nodiscard]] RingPtr without_t() const;
  [[nodiscard]] RingPtr with_params(const std::vector<std::string>& extra) const;
  [[nodiscard]] RingPtr without_params() const;
  [[nodiscard]] RingPtr without_param(std::string_view name) const;
  [[nodiscard]] RingPtr with_homogenization(bool on) const;

  friend bool operator==(const RingContext& a, const RingContext& b);

 private:
  std::vector<std::string> xs_;
  bool with_t_;
  std::vector<std::string> params_;
  bool homogenized_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view what);

}  // namespace dmod
