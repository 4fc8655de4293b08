#ifndef BSZ_CONTEXT_HPP
#define BSZ_CONTEXT_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bsz/errors.hpp"

namespace bsz {

// Ordered variable names shared by every polynomial of a computation.
//
// Exponent vectors have one slot per name, laid out as
//   [x_vars..., y_vars..., params...]
// and the term order is lexicographic in exactly that slot order. The x- and
// y-variables are "space" variables (they carry partial derivatives); the
// parameters (s or s_1..s_r) commute with everything.
class VarContext {
public:
  VarContext(std::vector<std::string> x_vars, std::vector<std::string> y_vars,
             std::vector<std::string> params)
      : x_(std::move(x_vars)), y_(std::move(y_vars)), params_(std::move(params)) {
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i < num_slots(); ++i) {
      const std::string& n = slot_name(i);
      if (n.empty()) throw InvalidArgument("empty variable name");
      if (!seen.insert(n).second) throw InvalidArgument("duplicate variable name '" + n + "'");
    }
  }

  static std::shared_ptr<const VarContext> make(std::vector<std::string> x_vars,
                                                std::vector<std::string> y_vars = {},
                                                std::vector<std::string> params = {}) {
    return std::make_shared<const VarContext>(std::move(x_vars), std::move(y_vars),
                                              std::move(params));
  }

  const std::vector<std::string>& x_vars() const noexcept { return x_; }
  const std::vector<std::string>& y_vars() const noexcept { return y_; }
  const std::vector<std::string>& params() const noexcept { return params_; }

  std::size_t num_x() const noexcept { return x_.size(); }
  std::size_t num_y() const noexcept { return y_.size(); }
  // Space variables: x followed by y.
  std::size_t num_vars() const noexcept { return x_.size() + y_.size(); }
  std::size_t num_params() const noexcept { return params_.size(); }
  std::size_t num_slots() const noexcept { return num_vars() + params_.size(); }

  std::size_t y_slot(std::size_t i) const noexcept { return x_.size() + i; }
  std::size_t param_slot(std::size_t i) const noexcept { return num_vars() + i; }
  bool is_param_slot(std::size_t slot) const noexcept { return slot >= num_vars(); }

  const std::string& slot_name(std::size_t slot) const {
    if (slot < x_.size()) return x_[slot];
    if (slot < num_vars()) return y_[slot - x_.size()];
    return params_.at(slot - num_vars());
  }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < num_slots(); ++i)
      if (slot_name(i) == name) return i;
    return std::nullopt;
  }

  std::size_t slot(std::string_view name) const {
    if (auto s = find(name)) return *s;
    throw UnknownVariable(std::string(name));
  }

  // All space variables in slot order (x then y).
  std::vector<std::string> space_vars() const {
    std::vector<std::string> v = x_;
    v.insert(v.end(), y_.begin(), y_.end());
    return v;
  }

  friend bool operator==(const VarContext& a, const VarContext& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.params_ == b.params_;
  }

private:
  std::vector<std::string> x_;
  std::vector<std::string> y_;
  std::vector<std::string> params_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* where) {
  if (!same_context(a, b)) throw ContextMismatch(std::string(where) + ": operands live in different contexts");
}

}  // namespace bsz

#endif  // BSZ_CONTEXT_HPP
