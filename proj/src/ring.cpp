#include "dmod/ring.hpp"

#include <algorithm>
#include <set>

namespace dmod {

Monomial operator+(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  return r;
}

RingContext::RingContext(std::vector<std::string> xs, bool with_t,
                         std::vector<std::string> params, bool homogenized)
    : xs_(std::move(xs)), with_t_(with_t), params_(std::move(params)), homogenized_(homogenized) {
  if (xs_.empty()) throw RingError("ring needs at least one x-variable");
  if (nvars() > kMaxVars) throw RingError("too many variables for the exponent layout");
  std::set<std::string> names;
  for (std::size_t slot = 0; slot < nvars(); ++slot) {
    auto name = var_name(slot);
    if (name.empty()) throw RingError("empty variable name");
    if (!names.insert(name).second) throw RingError("duplicate variable name '" + name + "'");
  }
}

RingPtr RingContext::make(std::vector<std::string> xs, bool with_t,
                          std::vector<std::string> params, bool homogenized) {
  return std::make_shared<const RingContext>(std::move(xs), with_t, std::move(params), homogenized);
}

std::size_t RingContext::t_pair() const {
  if (!with_t_) throw RingError("ring has no t variable");
  return xs_.size();
}

std::size_t RingContext::h_index() const {
  if (!homogenized_) throw RingError("ring is not homogenized");
  return 2 * pairs() + params_.size();
}

std::optional<std::size_t> RingContext::param_slot(std::string_view name) const {
  for (std::size_t k = 0; k < params_.size(); ++k)
    if (params_[k] == name) return param_index(k);
  return std::nullopt;
}

std::string RingContext::pair_name(std::size_t pair) const {
  if (pair < xs_.size()) return xs_[pair];
  if (with_t_ && pair == xs_.size()) return "t";
  throw RingError("pair index out of range");
}

std::string RingContext::var_name(std::size_t slot) const {
  const std::size_t p = pairs();
  if (slot < p) return pair_name(slot);
  if (slot < 2 * p) return "d" + pair_name(slot - p);
  if (slot < 2 * p + params_.size()) return params_[slot - 2 * p];
  if (homogenized_ && slot == 2 * p + params_.size()) return "h";
  throw RingError("variable slot out of range");
}

std::optional<std::size_t> RingContext::index_of(std::string_view name) const {
  for (std::size_t slot = 0; slot < nvars(); ++slot)
    if (var_name(slot) == name) return slot;
  return std::nullopt;
}

RingPtr RingContext::with_t() const { return make(xs_, true, params_, homogenized_); }
RingPtr RingContext::without_t() const { return make(xs_, false, params_, homogenized_); }

RingPtr RingContext::with_params(const std::vector<std::string>& extra) const {
  auto ps = params_;
  for (const auto& p : extra)
    if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  return make(xs_, with_t_, ps, homogenized_);
}

RingPtr RingContext::without_params() const { return make(xs_, with_t_, {}, homogenized_); }

RingPtr RingContext::without_param(std::string_view name) const {
  std::vector<std::string> ps;
  for (const auto& p : params_)
    if (p != name) ps.push_back(p);
  return make(xs_, with_t_, ps, homogenized_);
}

RingPtr RingContext::with_homogenization(bool on) const { return make(xs_, with_t_, params_, on); }

bool operator==(const RingContext& a, const RingContext& b) {
  return a.xs_ == b.xs_ && a.with_t_ == b.with_t_ && a.params_ == b.params_ &&
         a.homogenized_ == b.homogenized_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view what) {
  if (!same_ring(a, b)) throw RingError(std::string(what) + ": ring mismatch");
}

}  // namespace dmod
