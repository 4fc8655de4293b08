#ifndef BSZ_SECTION_HPP
#define BSZ_SECTION_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bsz/mpoly.hpp"
#include "bsz/weyl.hpp"

namespace bsz {

// Generators f_1..f_r of an ideal. Generator i is twisted by the parameter
// s_i, i.e. the context's i-th parameter; generators themselves never
// mention parameters.
class GenTuple {
public:
  explicit GenTuple(std::vector<MPoly> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw InvalidArgument("generator tuple must be nonempty");
    const ContextPtr& ctx = gens_.front().context();
    for (const auto& f : gens_) {
      require_same_context(ctx, f.context(), "GenTuple");
      if (f.is_zero()) throw InvalidArgument("generators must be nonzero");
      if (!f.only_uses(0, ctx->num_vars())) throw InvalidArgument("generators must not involve parameters");
    }
    derivs_.reserve(gens_.size());
    for (const auto& f : gens_) {
      std::vector<MPoly> row;
      for (std::size_t v = 0; v < ctx->num_vars(); ++v) row.push_back(diff(f, v));
      derivs_.push_back(std::move(row));
    }
  }

  std::size_t size() const noexcept { return gens_.size(); }
  const MPoly& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<MPoly>& generators() const noexcept { return gens_; }
  const ContextPtr& context() const noexcept { return gens_.front().context(); }
  // d f_i / d v
  const MPoly& derivative(std::size_t i, std::size_t v) const { return derivs_[i][v]; }

  // Product of f_i^e_i (all exponents nonnegative).
  MPoly power_product(const std::vector<int>& e) const {
    MPoly r(context(), 1);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (e[i] < 0) throw InvalidArgument("power_product: negative exponent");
      r *= pow(gens_[i], static_cast<unsigned>(e[i]));
    }
    return r;
  }

  // Checks that the context has one twisting parameter per generator.
  void require_twisting_context() const {
    if (context()->num_params() != gens_.size())
      throw ContextMismatch("context needs one parameter per generator (" + std::to_string(gens_.size()) +
                            "), has " + std::to_string(context()->num_params()));
  }

private:
  std::vector<MPoly> gens_;
  std::vector<std::vector<MPoly>> derivs_;
};

// The element h * prod_i f_i^(s_i + c_i) of the localized twisted module.
struct Section {
  MPoly h;
  std::vector<int> shifts;

  Section(MPoly numerator, std::vector<int> c) : h(std::move(numerator)), shifts(std::move(c)) {}

  // f_1^s_1 ... f_r^s_r shifted by c, with numerator 1.
  static Section symbol(const GenTuple& F, std::vector<int> c) {
    if (c.size() != F.size()) throw InvalidArgument("shift vector length must equal generator count");
    return Section(MPoly(F.context(), 1), std::move(c));
  }
};

namespace detail {

inline std::vector<int> min_shifts(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> k(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) k[i] = std::min(a[i], b[i]);
  return k;
}

inline std::vector<int> difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

inline void check_section(const Section& s, const GenTuple& F) {
  if (s.shifts.size() != F.size()) throw InvalidArgument("section shift vector does not match generator count");
  require_same_context(s.h.context(), F.context(), "section");
}

}  // namespace detail

// Numerator of `s` rewritten over the (componentwise smaller) shift `target`.
inline MPoly numerator_at(const Section& s, const std::vector<int>& target, const GenTuple& F) {
  return s.h * F.power_product(detail::difference(s.shifts, target));
}

inline Section add(const Section& a, const Section& b, const GenTuple& F) {
  detail::check_section(a, F);
  detail::check_section(b, F);
  if (a.h.is_zero()) return b;
  if (b.h.is_zero()) return a;
  if (a.shifts == b.shifts) return Section(a.h + b.h, a.shifts);
  std::vector<int> k = detail::min_shifts(a.shifts, b.shifts);
  return Section(numerator_at(a, k, F) + numerator_at(b, k, F), k);
}

// Multiplication of the numerator by a polynomial (which may involve s).
inline Section scale(const Section& a, const MPoly& p) { return Section(p * a.h, a.shifts); }

// d/dv acting on h * prod f_i^(s_i + c_i):
//   (d_v h * prod_{i in S} f_i + sum_{i in S} (s_i + c_i) h d_v f_i prod_{j in S, j != i} f_j)
//     * prod f_i^(s_i + c_i - [i in S])
// where S = { i : d_v f_i != 0 }.
inline Section apply_partial(std::size_t v, const Section& sec, const GenTuple& F) {
  detail::check_section(sec, F);
  F.require_twisting_context();
  const ContextPtr& ctx = F.context();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (!F.derivative(i, v).is_zero()) active.push_back(i);

  MPoly prod_all(ctx, 1);
  for (std::size_t i : active) prod_all *= F[i];
  MPoly h = diff(sec.h, v) * prod_all;
  for (std::size_t i : active) {
    MPoly others(ctx, 1);
    for (std::size_t j : active)
      if (j != i) others *= F[j];
    MPoly exponent = MPoly::slot_variable(ctx, ctx->param_slot(i)) + MPoly(ctx, sec.shifts[i]);
    h += exponent * sec.h * F.derivative(i, v) * others;
  }
  std::vector<int> c = sec.shifts;
  for (std::size_t i : active) c[i] -= 1;
  return Section(std::move(h), std::move(c));
}

// d^beta applied to every section reachable from `base`, memoized by multi-index.
class DerivativeCache {
public:
  DerivativeCache(const GenTuple& F, Section base) : F_(F) {
    cache_.emplace(Partials(F.context()->num_vars(), 0), std::move(base));
  }

  const Section& get(const Partials& beta) {
    auto it = cache_.find(beta);
    if (it != cache_.end()) return it->second;
    std::size_t v = 0;
    while (beta[v] == 0) ++v;
    Partials prev = beta;
    prev[v] -= 1;
    Section s = apply_partial(v, get(prev), F_);
    return cache_.emplace(beta, std::move(s)).first->second;
  }

private:
  const GenTuple& F_;
  std::map<Partials, Section> cache_;
};

// Divides out every generator that exactly divides the numerator. One pass is
// already a fixed point: if f_i divided a later quotient it divided h too.
inline Section normalize(const Section& sec, const GenTuple& F) {
  detail::check_section(sec, F);
  if (sec.h.is_zero()) return Section(sec.h, std::vector<int>(F.size(), 0));
  Section out = sec;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (F[i].is_constant()) continue;
    while (auto q = exact_divide(out.h, F[i])) {
      out.h = std::move(*q);
      out.shifts[i] += 1;
    }
  }
  return out;
}

inline Section apply(const WeylOp& op, const Section& sec, const GenTuple& F) {
  detail::check_section(sec, F);
  require_same_context(op.context(), F.context(), "apply");
  DerivativeCache cache(F, sec);
  Section acc(MPoly(F.context()), sec.shifts);
  for (const auto& [beta, c] : op.terms()) acc = add(acc, scale(cache.get(beta), c), F);
  return acc;
}

// a - b written over the common (componentwise minimal) shift.
inline Section section_difference(const Section& a, const Section& b, const GenTuple& F) {
  detail::check_section(a, F);
  detail::check_section(b, F);
  std::vector<int> k = detail::min_shifts(a.shifts, b.shifts);
  return Section(numerator_at(a, k, F) - numerator_at(b, k, F), k);
}

inline bool section_eq(const Section& a, const Section& b, const GenTuple& F) {
  return section_difference(a, b, F).h.is_zero();
}

// The honest polynomial obtained by setting s_i = m_i. Requires m_i + c_i >= 0.
inline MPoly specialize(const Section& sec, const GenTuple& F, const std::vector<unsigned>& m) {
  detail::check_section(sec, F);
  const ContextPtr& ctx = F.context();
  MPoly h = sec.h;
  for (std::size_t i = 0; i < ctx->num_params(); ++i) h = substitute(h, ctx->param_slot(i), BigRat(m.at(i)));
  std::vector<int> e(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    e[i] = static_cast<int>(m.at(i)) + sec.shifts[i];
    if (e[i] < 0) throw InvalidArgument("specialize: negative exponent after substitution");
  }
  return h * F.power_product(e);
}

// Substitutes s_i = m_i in every coefficient of an operator.
inline WeylOp specialize(const WeylOp& op, const std::vector<unsigned>& m) {
  const ContextPtr& ctx = op.context();
  WeylOp r(ctx);
  for (const auto& [b, c] : op.terms()) {
    MPoly k = c;
    for (std::size_t i = 0; i < ctx->num_params(); ++i) k = substitute(k, ctx->param_slot(i), BigRat(m.at(i)));
    r.add_term(b, k);
  }
  return r;
}

}  // namespace bsz

#endif  // BSZ_SECTION_HPP
