#ifndef BSZ_WEYL_HPP
#define BSZ_WEYL_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bsz/mpoly.hpp"

namespace bsz {

// Partial-derivative multi-index, one slot per space variable (x then y).
using Partials = std::vector<unsigned>;

// Differential operator in normal order: sum of coeff(x, y, s) * d^beta with
// every coefficient written to the left of every partial. This form is
// unique, so two operators are equal iff their term maps are equal.
class WeylOp {
public:
  using TermMap = std::map<Partials, MPoly>;

  explicit WeylOp(ContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw InvalidArgument("WeylOp requires a context");
  }

  // Multiplication operator by a polynomial.
  static WeylOp multiplication(const MPoly& c) {
    WeylOp op(c.context());
    op.add_term(Partials(op.ctx_->num_vars(), 0), c);
    return op;
  }

  static WeylOp identity(const ContextPtr& ctx) { return multiplication(MPoly(ctx, 1)); }

  static WeylOp partial(const ContextPtr& ctx, std::string_view var) {
    std::size_t slot = ctx->slot(var);
    if (ctx->is_param_slot(slot)) throw InvalidArgument("cannot differentiate by parameter '" + std::string(var) + "'");
    Partials b(ctx->num_vars(), 0);
    b[slot] = 1;
    WeylOp op(ctx);
    op.add_term(b, MPoly(ctx, 1));
    return op;
  }

  static WeylOp term(const MPoly& c, Partials beta) {
    WeylOp op(c.context());
    op.add_term(std::move(beta), c);
    return op;
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Partials& beta, const MPoly& c) {
    if (beta.size() != ctx_->num_vars()) throw InvalidArgument("partials vector has wrong length");
    require_same_context(ctx_, c.context(), "WeylOp::add_term");
    if (c.is_zero()) return;
    auto it = terms_.find(beta);
    if (it == terms_.end()) {
      terms_.emplace(beta, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  unsigned order() const {
    unsigned d = 0;
    for (const auto& [b, c] : terms_) d = std::max(d, total_degree(b, 0, b.size()));
    return d;
  }

  WeylOp& operator+=(const WeylOp& o) {
    require_same_context(ctx_, o.ctx_, "WeylOp +");
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
  }
  WeylOp& operator-=(const WeylOp& o) {
    require_same_context(ctx_, o.ctx_, "WeylOp -");
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
  }
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }

  // Left multiplication by a polynomial (stays normal ordered).
  friend WeylOp operator*(const MPoly& p, const WeylOp& a) {
    WeylOp r(a.ctx_);
    for (const auto& [b, c] : a.terms_) r.add_term(b, p * c);
    return r;
  }
  friend WeylOp operator*(const BigRat& k, WeylOp a) {
    for (auto it = a.terms_.begin(); it != a.terms_.end();) {
      it->second *= k;
      it = it->second.is_zero() ? a.terms_.erase(it) : std::next(it);
    }
    return a;
  }

  friend bool operator==(const WeylOp& a, const WeylOp& b) {
    return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
  }

private:
  ContextPtr ctx_;
  TermMap terms_;
};

namespace detail {

// d^gamma applied to a polynomial coefficient.
inline MPoly diff_multi(const MPoly& p, const Partials& gamma) {
  MPoly r = p;
  for (std::size_t v = 0; v < gamma.size(); ++v)
    for (unsigned k = 0; k < gamma[v]; ++k) r = diff(r, v);
  return r;
}

inline void for_each_sub_index(const Partials& beta, const std::function<void(const Partials&)>& fn) {
  Partials g(beta.size(), 0);
  while (true) {
    fn(g);
    std::size_t i = 0;
    while (i < g.size() && g[i] == beta[i]) {
      g[i] = 0;
      ++i;
    }
    if (i == g.size()) return;
    ++g[i];
  }
}

inline BigInt multi_binomial(const Partials& beta, const Partials& gamma) {
  BigInt r = 1;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), beta[i], gamma[i]);
    r *= b;
  }
  return r;
}

}  // namespace detail

// Normal-ordered product a * b via the Leibniz rule
//   d^beta * c = sum_{gamma <= beta} binom(beta, gamma) (d^gamma c) d^(beta - gamma).
inline WeylOp compose(const WeylOp& a, const WeylOp& b) {
  require_same_context(a.context(), b.context(), "compose");
  WeylOp r(a.context());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      detail::for_each_sub_index(ba, [&](const Partials& gamma) {
        MPoly dc = detail::diff_multi(cb, gamma);
        if (dc.is_zero()) return;
        Partials rest(ba.size());
        for (std::size_t i = 0; i < ba.size(); ++i) rest[i] = ba[i] - gamma[i] + bb[i];
        r.add_term(rest, (ca * dc) * BigRat(detail::multi_binomial(ba, gamma)));
      });
    }
  }
  return r;
}

// Applies an operator to an ordinary polynomial (no twisting symbol).
inline MPoly apply_to_poly(const WeylOp& op, const MPoly& h) {
  require_same_context(op.context(), h.context(), "apply_to_poly");
  MPoly r(h.context());
  for (const auto& [b, c] : op.terms()) r += c * detail::diff_multi(h, b);
  return r;
}

inline std::string to_string(const WeylOp& op) {
  if (op.is_zero()) return "0";
  const VarContext& ctx = *op.context();
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : op.terms()) {
    if (!first) os << " + ";
    first = false;
    bool pure = total_degree(b, 0, b.size()) == 0;
    bool unit = c.is_constant() && c.constant_term() == 1;
    if (pure || !unit) {
      os << '(' << to_string(c) << ')';
      if (!pure) os << '*';
    }
    bool wrote = false;
    for (std::size_t v = 0; v < b.size(); ++v) {
      if (b[v] == 0) continue;
      if (wrote) os << '*';
      os << "d" << ctx.slot_name(v);
      if (b[v] > 1) os << '^' << b[v];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace bsz

#endif  // BSZ_WEYL_HPP
