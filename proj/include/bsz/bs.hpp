#ifndef BSZ_BS_HPP
#define BSZ_BS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsz/linear.hpp"
#include "bsz/mpoly.hpp"
#include "bsz/section.hpp"
#include "bsz/upoly.hpp"
#include "bsz/weyl.hpp"

namespace bsz {

// Limits of the finite ansatz used to look for a functional equation.
struct SearchBounds {
  unsigned op_order = 2;   // max total order of partials
  unsigned x_degree = 1;   // max total degree of coefficients in the space variables
  unsigned s_degree = 1;   // max total degree of coefficients in the parameters
  std::optional<unsigned> shift_bound;  // U; defaults to op_order
  unsigned b_degree = 4;   // largest degree of b tried

  unsigned effective_shift_bound() const { return shift_bound.value_or(op_order); }
};

// b(s) f^s = P . f^(s+1)
struct PrincipalCert {
  UPoly b;
  WeylOp op;
};

// b(s_1 + ... + s_r) prod f_i^s_i
//   = sum_u Q_u . [ prod_{u_i < 0} binom(s_i, -u_i) prod f_i^(s_i + u_i) ]
struct IdealCert {
  UPoly b;
  std::vector<std::vector<int>> shifts;
  std::vector<WeylOp> ops;
};

enum class SearchStatus { Found, NotFoundWithinBounds };

template <class Cert>
struct BSResult {
  SearchStatus status = SearchStatus::NotFoundWithinBounds;
  std::optional<Cert> cert;
  SearchBounds bounds;
  // b-degrees shown infeasible at the full bounds, in increasing order.
  std::vector<unsigned> infeasible_degrees;

  bool found() const { return status == SearchStatus::Found; }
};

struct VerifyResult {
  bool ok = false;
  // Leading term of LHS - RHS over the common shift when !ok.
  std::string first_failure;
  explicit operator bool() const { return ok; }
};

// ---------------------------------------------------------------------------
// Context plumbing

namespace detail {

inline std::string fresh_name(const VarContext& ctx, std::string base, const std::vector<std::string>& taken = {}) {
  auto clash = [&](const std::string& n) {
    return ctx.find(n).has_value() || std::find(taken.begin(), taken.end(), n) != taken.end();
  };
  while (clash(base)) base += "_";
  return base;
}

}  // namespace detail

// Same space variables, parameters replaced by `r` twisting parameters
// (s for r = 1, s1..sr otherwise).
inline ContextPtr twisted_context(const ContextPtr& ctx, std::size_t r) {
  VarContext space(ctx->x_vars(), ctx->y_vars(), {});
  std::vector<std::string> params;
  for (std::size_t i = 0; i < r; ++i) {
    std::string base = r == 1 ? "s" : "s" + std::to_string(i + 1);
    params.push_back(detail::fresh_name(space, base, params));
  }
  return VarContext::make(ctx->x_vars(), ctx->y_vars(), params);
}

// Moves a parameter-free polynomial into a twisted context.
inline MPoly into_context(const MPoly& f, const ContextPtr& target) {
  std::vector<std::optional<std::size_t>> m(f.context()->num_slots());
  for (std::size_t i = 0; i < f.context()->num_vars(); ++i) m[i] = i;
  return remap(f, target, m);
}

// Twisted copy of the tuple, unless it already carries one parameter per generator.
inline GenTuple twisted(const GenTuple& F) {
  if (F.context()->num_params() == F.size()) return F;
  ContextPtr ctx = twisted_context(F.context(), F.size());
  std::vector<MPoly> g;
  for (const auto& f : F.generators()) g.push_back(into_context(f, ctx));
  return GenTuple(std::move(g));
}

// s_1 + ... + s_r
inline MPoly param_sum(const ContextPtr& ctx) {
  MPoly s(ctx);
  for (std::size_t i = 0; i < ctx->num_params(); ++i) s += MPoly::slot_variable(ctx, ctx->param_slot(i));
  return s;
}

// b evaluated at a polynomial argument.
inline MPoly eval_at(const UPoly& b, const MPoly& arg) {
  MPoly acc(arg.context());
  for (int k = b.degree(); k >= 0; --k) acc = acc * arg + MPoly(arg.context(), b.coeffs()[k]);
  return acc;
}

// binom(s_i, m) = (1/m!) prod_{j<m} (s_i - j)
inline MPoly binomial_in_param(const ContextPtr& ctx, std::size_t i, unsigned m) {
  MPoly s = MPoly::slot_variable(ctx, ctx->param_slot(i));
  MPoly r(ctx, 1);
  for (unsigned j = 0; j < m; ++j) r *= s - MPoly(ctx, BigRat(j));
  return r * BigRat(1, factorial(m));
}

// prod_{u_i < 0} binom(s_i, -u_i)
inline MPoly shift_prefactor(const ContextPtr& ctx, const std::vector<int>& u) {
  MPoly r(ctx, 1);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] < 0) r *= binomial_in_param(ctx, i, static_cast<unsigned>(-u[i]));
  return r;
}

// All u in Z^r with |u| = 1 and u_i >= -U. Simple shifts (fewest negative
// units) come first, then descending lexicographic order.
inline std::vector<std::vector<int>> enumerate_shifts(std::size_t r, unsigned U) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r);
  const int lo = -static_cast<int>(U);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i + 1 == r) {
      if (remaining >= lo) {
        cur[i] = remaining;
        out.push_back(cur);
      }
      return;
    }
    // remaining entries each >= lo, so this one is at most remaining - lo*(r-i-1)
    int hi = remaining - lo * static_cast<int>(r - i - 1);
    for (int v = lo; v <= hi; ++v) {
      cur[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, 1);
  auto weight = [](const std::vector<int>& u) {
    int w = 0;
    for (int v : u) w += v < 0 ? -v : 0;
    return w;
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    int wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    return a > b;
  });
  return out;
}

// Exponent vectors over [begin, end) of total degree <= d, ascending degree.
inline std::vector<Exponents> monomials_up_to(std::size_t nslots, std::size_t begin, std::size_t end, unsigned d) {
  std::vector<Exponents> out;
  Exponents e(nslots, 0);
  if (begin == end) {
    out.push_back(e);
    return out;
  }
  auto rec = [&](auto&& self, std::size_t i, unsigned rem) -> void {
    if (i + 1 == end) {
      e[i] = rem;
      out.push_back(e);
      e[i] = 0;
      return;
    }
    for (unsigned v = rem + 1; v-- > 0;) {
      e[i] = v;
      self(self, i + 1, rem - v);
    }
    e[i] = 0;
  };
  for (unsigned deg = 0; deg <= d; ++deg) rec(rec, begin, deg);
  return out;
}

inline std::vector<Partials> partials_up_to(std::size_t nvars, unsigned order) {
  return monomials_up_to(nvars, 0, nvars, order);
}

// ---------------------------------------------------------------------------
// Verification

namespace detail {

inline VerifyResult compare_sections(const Section& lhs, const Section& rhs, const GenTuple& F) {
  Section d = section_difference(lhs, rhs, F);
  VerifyResult v;
  v.ok = d.h.is_zero();
  if (!v.ok) {
    const auto& [e, c] = d.h.leading_term();
    v.first_failure = "coefficient of " + to_string(MPoly::monomial(d.h.context(), e)) +
                      " in LHS - RHS is " + to_string(c);
  }
  return v;
}

inline void require_principal_context(const ContextPtr& ctx) {
  if (ctx->num_params() != 1) throw ContextMismatch("principal certificate needs exactly one parameter");
}

}  // namespace detail

// Re-homes an operator by variable name (no-op when already in `ctx`).
inline WeylOp to_context(const WeylOp& op, const ContextPtr& ctx) {
  if (same_context(op.context(), ctx)) return op;
  if (op.context()->space_vars() != ctx->space_vars())
    throw ContextMismatch("operator space variables do not match the generators");
  WeylOp moved(ctx);
  for (const auto& [b, c] : op.terms()) moved.add_term(b, remap_by_name(c, ctx));
  return moved;
}

inline VerifyResult verify_principal(const PrincipalCert& cert, const MPoly& f_in) {
  const ContextPtr& ctx = cert.op.context();
  detail::require_principal_context(ctx);
  if (!cert.b.is_monic()) return VerifyResult{false, "b is not monic"};
  MPoly f = same_context(f_in.context(), ctx) ? f_in : remap_by_name(f_in, ctx);
  GenTuple F({f});
  MPoly s = MPoly::slot_variable(ctx, ctx->param_slot(0));
  Section lhs(eval_at(cert.b, s), {0});
  Section rhs = apply(cert.op, Section::symbol(F, {1}), F);
  return detail::compare_sections(lhs, rhs, F);
}

inline VerifyResult verify_ideal(const IdealCert& cert, const GenTuple& F_in) {
  if (cert.shifts.size() != cert.ops.size()) throw InvalidArgument("certificate has a different number of shifts and operators");
  GenTuple F = twisted(F_in);
  const ContextPtr& ctx = F.context();
  for (const auto& u : cert.shifts) {
    if (u.size() != F.size()) throw InvalidArgument("malformed shift: wrong length");
    int total = 0;
    for (int v : u) total += v;
    if (total != 1) throw InvalidArgument("malformed shift: entries must sum to 1");
  }
  if (!cert.b.is_monic()) return VerifyResult{false, "b is not monic"};
  Section lhs(eval_at(cert.b, param_sum(ctx)), std::vector<int>(F.size(), 0));
  Section rhs(MPoly(ctx), std::vector<int>(F.size(), 0));
  for (std::size_t k = 0; k < cert.shifts.size(); ++k) {
    Section term(shift_prefactor(ctx, cert.shifts[k]), cert.shifts[k]);
    rhs = add(rhs, apply(to_context(cert.ops[k], ctx), term, F), F);
  }
  return detail::compare_sections(lhs, rhs, F);
}

// ---------------------------------------------------------------------------
// Search

namespace detail {

// Operator unknowns for one rung of the ansatz: every (shift, beta, multiplier
// monomial) triple gives one column, whose polynomial is the multiplier times
// d^beta applied to the shifted symbol, written over a common shift K.
struct AnsatzColumns {
  std::vector<int> common_shift;  // K
  struct Block {
    std::size_t shift_index;
    Partials beta;
    MPoly numerator;  // over K
  };
  std::vector<Block> blocks;
  std::vector<Exponents> multipliers;
};

inline AnsatzColumns build_columns(const GenTuple& F, const std::vector<std::vector<int>>& shifts,
                                   unsigned order, unsigned x_degree, unsigned s_degree) {
  const ContextPtr& ctx = F.context();
  const std::size_t r = F.size();
  std::vector<Partials> betas = partials_up_to(ctx->num_vars(), order);

  struct Raw {
    std::size_t shift_index;
    Partials beta;
    Section sec;
  };
  std::vector<Raw> raw;
  std::vector<int> k(r, 0);
  for (std::size_t si = 0; si < shifts.size(); ++si) {
    DerivativeCache cache(F, Section(shift_prefactor(ctx, shifts[si]), shifts[si]));
    for (const auto& beta : betas) {
      const Section& s = cache.get(beta);
      if (s.h.is_zero()) continue;
      k = min_shifts(k, s.shifts);
      raw.push_back({si, beta, s});
    }
  }

  AnsatzColumns cols;
  cols.common_shift = k;
  for (auto& rw : raw) cols.blocks.push_back({rw.shift_index, rw.beta, numerator_at(rw.sec, k, F)});

  std::vector<Exponents> xm = monomials_up_to(ctx->num_slots(), 0, ctx->num_vars(), x_degree);
  std::vector<Exponents> sm = monomials_up_to(ctx->num_slots(), ctx->num_vars(), ctx->num_slots(), s_degree);
  for (const auto& a : xm)
    for (const auto& b : sm) cols.multipliers.push_back(add_exponents(a, b));
  return cols;
}

struct Candidate {
  UPoly b;
  std::vector<WeylOp> ops;  // one per shift
};

// One exact feasibility problem: monic b of degree d plus operators drawn
// from `cols`.
inline std::optional<Candidate> solve_at_degree(const GenTuple& F, const std::vector<std::vector<int>>& shifts,
                                                const AnsatzColumns& cols, unsigned d) {
  const ContextPtr& ctx = F.context();
  std::vector<int> neg_k(cols.common_shift.size());
  for (std::size_t i = 0; i < neg_k.size(); ++i) neg_k[i] = -cols.common_shift[i];
  MPoly base = F.power_product(neg_k);  // numerator of f^s over K
  MPoly sigma = param_sum(ctx);

  const std::size_t n_b = d;
  const std::size_t n_ops = cols.blocks.size() * cols.multipliers.size();
  LinearSystem sys(n_b + n_ops);

  std::map<Exponents, std::size_t> row_of;
  std::vector<SparseRow> rows;
  auto row_index = [&](const Exponents& e) {
    auto [it, inserted] = row_of.try_emplace(e, rows.size());
    if (inserted) rows.emplace_back();
    return it->second;
  };

  // Unknowns b_0..b_{d-1} come first: sum_j b_j sigma^j base moves to the left
  // with a minus sign; sigma^d base is the right-hand side.
  MPoly sig_pow(ctx, 1);
  for (std::size_t j = 0; j < n_b; ++j) {
    MPoly col = sig_pow * base;
    for (const auto& [e, c] : col.terms()) rows[row_index(e)].emplace_back(j, -c);
    sig_pow *= sigma;
  }
  MPoly target = sig_pow * base;

  std::size_t col = n_b;
  for (const auto& blk : cols.blocks) {
    for (const auto& m : cols.multipliers) {
      for (const auto& [e, c] : blk.numerator.terms()) rows[row_index(add_exponents(e, m))].emplace_back(col, c);
      ++col;
    }
  }

  std::vector<BigRat> rhs(rows.size(), BigRat(0));
  for (const auto& [e, c] : target.terms()) {
    auto it = row_of.find(e);
    if (it == row_of.end()) return std::nullopt;  // 0 = nonzero
    rhs[it->second] = c;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) sys.add_row(std::move(rows[i]), rhs[i]);

  LinearSolution sol = solve_linear(sys, false);
  if (!sol.feasible) return std::nullopt;

  std::vector<BigRat> bc(d + 1);
  for (std::size_t j = 0; j < n_b; ++j) bc[j] = sol.x[j];
  bc[d] = 1;
  Candidate cand{UPoly(std::move(bc)), {}};
  for (std::size_t si = 0; si < shifts.size(); ++si) cand.ops.emplace_back(ctx);
  col = n_b;
  for (const auto& blk : cols.blocks) {
    for (const auto& m : cols.multipliers) {
      if (sol.x[col] != 0) cand.ops[blk.shift_index].add_term(blk.beta, MPoly::monomial(ctx, m, sol.x[col]));
      ++col;
    }
  }
  return cand;
}

// Rungs of the iterative deepening over (order, x-degree, s-degree, U); the
// last rung is the full bounds.
inline std::vector<SearchBounds> rungs(const SearchBounds& full) {
  std::vector<SearchBounds> out;
  unsigned U = full.effective_shift_bound();
  unsigned top = std::max({full.op_order, full.x_degree, full.s_degree, U, 1u});
  for (unsigned t = 1; t <= top; ++t) {
    SearchBounds b = full;
    b.op_order = std::min(full.op_order, t);
    b.x_degree = std::min(full.x_degree, t - 1);
    b.s_degree = std::min(full.s_degree, t - 1);
    b.shift_bound = std::min(U, t - 1);
    if (t == top) {
      b.x_degree = full.x_degree;
      b.s_degree = full.s_degree;
      b.shift_bound = U;
    }
    if (!out.empty()) {
      const SearchBounds& p = out.back();
      if (p.op_order == b.op_order && p.x_degree == b.x_degree && p.s_degree == b.s_degree &&
          p.shift_bound == b.shift_bound)
        continue;
    }
    out.push_back(b);
  }
  return out;
}

struct SearchOutcome {
  std::optional<Candidate> cand;
  std::vector<std::vector<int>> shifts;
  std::vector<unsigned> infeasible;
};

// Minimal-degree search shared by the principal and ideal cases.
inline SearchOutcome search(const GenTuple& F, const SearchBounds& bounds, bool principal) {
  std::vector<SearchBounds> ladder = rungs(bounds);
  struct Level {
    std::vector<std::vector<int>> shifts;
    AnsatzColumns cols;
  };
  std::vector<std::optional<Level>> levels(ladder.size());
  auto level = [&](std::size_t i) -> const Level& {
    if (!levels[i]) {
      const SearchBounds& b = ladder[i];
      std::vector<std::vector<int>> shifts =
          principal ? std::vector<std::vector<int>>{{1}} : enumerate_shifts(F.size(), b.effective_shift_bound());
      AnsatzColumns cols = build_columns(F, shifts, b.op_order, b.x_degree, b.s_degree);
      levels[i] = Level{std::move(shifts), std::move(cols)};
    }
    return *levels[i];
  };

  SearchOutcome out;
  for (unsigned d = 0; d <= bounds.b_degree; ++d) {
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const Level& lv = level(i);
      if (auto c = solve_at_degree(F, lv.shifts, lv.cols, d)) {
        out.cand = std::move(c);
        out.shifts = lv.shifts;
        return out;
      }
    }
    out.infeasible.push_back(d);
  }
  return out;
}

}  // namespace detail

// Smallest-degree monic b (within bounds) with b(s) f^s = P . f^(s+1).
inline BSResult<PrincipalCert> solve_principal(const MPoly& f_in, const SearchBounds& bounds) {
  if (f_in.is_zero()) throw InvalidArgument("solve_principal: f must be nonzero");
  if (f_in.context()->num_params() > 1) throw ContextMismatch("solve_principal: at most one parameter expected");
  GenTuple F = twisted(GenTuple({f_in}));
  BSResult<PrincipalCert> res;
  res.bounds = bounds;
  detail::SearchOutcome o = detail::search(F, bounds, true);
  res.infeasible_degrees = o.infeasible;
  if (o.cand) {
    PrincipalCert cert{o.cand->b, o.cand->ops.front()};
    if (!verify_principal(cert, F[0])) throw Error("internal", "solver produced a certificate that does not verify");
    res.status = SearchStatus::Found;
    res.cert = std::move(cert);
  }
  return res;
}

// Smallest-degree monic b (within bounds) satisfying the multi-shift identity.
inline BSResult<IdealCert> solve_ideal(const GenTuple& F_in, const SearchBounds& bounds) {
  GenTuple F = twisted(F_in);
  BSResult<IdealCert> res;
  res.bounds = bounds;
  detail::SearchOutcome o = detail::search(F, bounds, false);
  res.infeasible_degrees = o.infeasible;
  if (o.cand) {
    IdealCert cert;
    cert.b = o.cand->b;
    for (std::size_t k = 0; k < o.shifts.size(); ++k) {
      if (o.cand->ops[k].is_zero()) continue;
      cert.shifts.push_back(o.shifts[k]);
      cert.ops.push_back(o.cand->ops[k]);
    }
    if (!verify_ideal(cert, F)) throw Error("internal", "solver produced a certificate that does not verify");
    res.status = SearchStatus::Found;
    res.cert = std::move(cert);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Product hypersurface and reduction

// g = sum_i f_i y_i on the product space. The result lives in a context whose
// x-variables are all space variables of F, whose y-variables are `y_names`
// (default y1..yr, renamed on collision) and whose single parameter is s.
inline MPoly build_g(const GenTuple& F, std::vector<std::string> y_names = {}) {
  const ContextPtr& base = F.context();
  const std::size_t r = F.size();
  if (y_names.empty()) {
    for (std::size_t i = 0; i < r; ++i)
      y_names.push_back(detail::fresh_name(VarContext(base->space_vars(), {}, {}), "y" + std::to_string(i + 1), y_names));
  }
  if (y_names.size() != r)
    throw InvalidArgument("build_g: " + std::to_string(y_names.size()) + " y-variables for " + std::to_string(r) +
                          " generators");
  std::vector<std::string> xs = base->space_vars();
  std::string s = detail::fresh_name(VarContext(xs, y_names, {}), "s");
  ContextPtr ctx = VarContext::make(xs, y_names, {s});
  MPoly g(ctx);
  for (std::size_t i = 0; i < r; ++i) g += into_context(F[i], ctx) * MPoly::slot_variable(ctx, ctx->y_slot(i));
  return g;
}

// b / (s + 1), the reduced polynomial.
inline UPoly reduce_bs(const UPoly& b) {
  if (!b.is_monic()) throw InvalidArgument("reduce_bs: b must be monic");
  auto [q, r] = divmod(b, UPoly::linear(BigRat(-1)));
  if (!r.is_zero()) throw NotDivisible("(s+1) does not divide " + to_string(b));
  return q;
}

}  // namespace bsz

#endif  // BSZ_BS_HPP
