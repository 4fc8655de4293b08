#ifndef BSZ_MPOLY_HPP
#define BSZ_MPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bsz/context.hpp"
#include "bsz/rational.hpp"

namespace bsz {

using Exponents = std::vector<unsigned>;

inline Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// True when b divides a componentwise.
inline bool divides(const Exponents& b, const Exponents& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] > a[i]) return false;
  return true;
}

inline unsigned total_degree(const Exponents& e, std::size_t begin, std::size_t end) {
  unsigned d = 0;
  for (std::size_t i = begin; i < end; ++i) d += e[i];
  return d;
}

// Sparse multivariate polynomial with exact rational coefficients.
//
// Terms are kept in a map keyed by exponent vector, so iteration runs in
// increasing lexicographic order and the leading term is the last entry.
// Zero coefficients are never stored.
class MPoly {
public:
  using TermMap = std::map<Exponents, BigRat>;

  explicit MPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw InvalidArgument("MPoly requires a context");
  }

  MPoly(ContextPtr ctx, const BigRat& c) : MPoly(std::move(ctx)) {
    if (c != 0) terms_.emplace(Exponents(ctx_->num_slots(), 0), c);
  }

  static MPoly monomial(ContextPtr ctx, Exponents e, const BigRat& c = 1) {
    MPoly p(std::move(ctx));
    if (e.size() != p.ctx_->num_slots()) throw InvalidArgument("exponent vector has wrong length");
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }

  static MPoly variable(const ContextPtr& ctx, std::string_view name) {
    Exponents e(ctx->num_slots(), 0);
    e[ctx->slot(name)] = 1;
    return monomial(ctx, std::move(e));
  }

  static MPoly slot_variable(const ContextPtr& ctx, std::size_t slot) {
    Exponents e(ctx->num_slots(), 0);
    e.at(slot) = 1;
    return monomial(ctx, std::move(e));
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && bsz::total_degree(terms_.begin()->first, 0, ctx_->num_slots()) == 0);
  }

  BigRat constant_term() const {
    auto it = terms_.find(Exponents(ctx_->num_slots(), 0));
    return it == terms_.end() ? BigRat(0) : it->second;
  }

  BigRat coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRat(0) : it->second;
  }

  // Lexicographically largest term. Precondition: nonzero.
  const std::pair<const Exponents, BigRat>& leading_term() const { return *terms_.rbegin(); }

  void add_term(const Exponents& e, const BigRat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Highest total degree over the slot range [begin, end).
  unsigned degree_in(std::size_t begin, std::size_t end) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, bsz::total_degree(e, begin, end));
    return d;
  }
  unsigned total_degree() const { return degree_in(0, ctx_->num_slots()); }
  unsigned degree_in_slot(std::size_t slot) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[slot]);
    return d;
  }

  // True when every term has zero exponent outside [begin, end).
  bool only_uses(std::size_t begin, std::size_t end) const {
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if ((i < begin || i >= end) && e[i] != 0) return false;
    return true;
  }

  bool has_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
  }

  MPoly& operator+=(const MPoly& o) {
    require_same_context(ctx_, o.ctx_, "MPoly +");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  MPoly& operator-=(const MPoly& o) {
    require_same_context(ctx_, o.ctx_, "MPoly -");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  MPoly& operator*=(const BigRat& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [e, v] : terms_) v *= c;
    }
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const BigRat& c) { return a *= c; }
  friend MPoly operator*(const BigRat& c, MPoly a) { return a *= c; }
  friend MPoly operator-(MPoly a) {
    for (auto& [e, v] : a.terms_) v = -v;
    return a;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    require_same_context(a.ctx_, b.ctx_, "MPoly *");
    MPoly r(a.ctx_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  // Multiplication by the single term c * x^e.
  MPoly times_term(const Exponents& e, const BigRat& c) const {
    MPoly r(ctx_);
    if (c == 0) return r;
    for (const auto& [ea, ca] : terms_) r.terms_.emplace_hint(r.terms_.end(), add_exponents(ea, e), ca * c);
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
  }

private:
  ContextPtr ctx_;
  TermMap terms_;
};

inline MPoly pow(const MPoly& base, unsigned n) {
  MPoly r(base.context(), 1);
  for (unsigned i = 0; i < n; ++i) r *= base;
  return r;
}

// Formal partial derivative with respect to a slot.
inline MPoly diff(const MPoly& a, std::size_t slot) {
  if (slot >= a.context()->num_slots()) throw InvalidArgument("derivative slot out of range");
  MPoly r(a.context());
  for (const auto& [e, c] : a.terms()) {
    if (e[slot] == 0) continue;
    Exponents d = e;
    d[slot] -= 1;
    r.add_term(d, c * e[slot]);
  }
  return r;
}

inline MPoly diff(const MPoly& a, std::string_view var) { return diff(a, a.context()->slot(var)); }

// Exact division. Returns q with a = q*b, or nullopt when b does not divide a.
// Lex-leading-term reduction terminates because lex is a well-order.
inline std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b) {
  require_same_context(a.context(), b.context(), "exact_divide");
  if (b.is_zero()) throw InvalidArgument("exact_divide: division by zero polynomial");
  MPoly q(a.context());
  MPoly rem = a;
  const auto& [lb_e, lb_c] = b.leading_term();
  while (!rem.is_zero()) {
    const auto& [lr_e, lr_c] = rem.leading_term();
    if (!divides(lb_e, lr_e)) return std::nullopt;
    Exponents qe(lr_e.size());
    for (std::size_t i = 0; i < qe.size(); ++i) qe[i] = lr_e[i] - lb_e[i];
    BigRat qc = lr_c / lb_c;
    q.add_term(qe, qc);
    rem -= b.times_term(qe, qc);
  }
  return q;
}

// Substitutes a rational value for one slot.
inline MPoly substitute(const MPoly& a, std::size_t slot, const BigRat& value) {
  MPoly r(a.context());
  for (const auto& [e, c] : a.terms()) {
    Exponents d = e;
    unsigned k = d[slot];
    d[slot] = 0;
    r.add_term(d, c * pow(value, k));
  }
  return r;
}

// Substitutes a polynomial for one slot. Terms are rewritten independently,
// so `value` may itself mention the slot.
inline MPoly substitute(const MPoly& a, std::size_t slot, const MPoly& value) {
  require_same_context(a.context(), value.context(), "substitute");
  std::map<unsigned, MPoly> powers;
  MPoly r(a.context());
  for (const auto& [e, c] : a.terms()) {
    Exponents d = e;
    unsigned k = d[slot];
    d[slot] = 0;
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, pow(value, k)).first;
    r += it->second.times_term(d, c);
  }
  return r;
}

// Moves a polynomial into another context. slot_map[i] is the target slot of
// source slot i; a source slot without a target must not occur in `a`.
inline MPoly remap(const MPoly& a, const ContextPtr& target,
                   std::span<const std::optional<std::size_t>> slot_map) {
  MPoly r(target);
  for (const auto& [e, c] : a.terms()) {
    Exponents d(target->num_slots(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!slot_map[i])
        throw ContextMismatch("remap: variable '" + a.context()->slot_name(i) + "' has no image");
      d[*slot_map[i]] += e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

// Maps by name: every slot name of the source that occurs must exist in target.
inline MPoly remap_by_name(const MPoly& a, const ContextPtr& target) {
  std::vector<std::optional<std::size_t>> m(a.context()->num_slots());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = target->find(a.context()->slot_name(i));
  return remap(a, target, m);
}

inline std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  const VarContext& ctx = *p.context();
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    BigRat mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool has_vars = total_degree(e, 0, e.size()) > 0;
    bool wrote = false;
    if (mag != 1 || !has_vars) {
      os << to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << ctx.slot_name(i);
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace bsz

#endif  // BSZ_MPOLY_HPP
