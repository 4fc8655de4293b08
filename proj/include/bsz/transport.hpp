#ifndef BSZ_TRANSPORT_HPP
#define BSZ_TRANSPORT_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bsz/bs.hpp"

namespace bsz {

// Key (alpha, beta) of the block P_{alpha,beta} (1/beta!) y^alpha d_y^beta.
using YBlockKey = std::pair<Exponents, Partials>;
using YDecomposition = std::map<YBlockKey, WeylOp>;

// Context of the blocks: the x-variables of `product` and its parameters.
inline ContextPtr base_of_product(const ContextPtr& product) {
  return VarContext::make(product->x_vars(), {}, product->params());
}

// Unique decomposition P = sum P_{alpha,beta} (1/beta!) y^alpha d_y^beta with
// every P_{alpha,beta} an operator in x, d_x and the parameters. Since y^alpha
// commutes with x and d_x, a normal-ordered term c(x,y,s) d_x^gamma d_y^beta
// splits along the y-monomials of c, and the block picks up a factor beta!.
inline YDecomposition decompose_in_y(const WeylOp& P) {
  const ContextPtr& ctx = P.context();
  const std::size_t nx = ctx->num_x(), ny = ctx->num_y(), np = ctx->num_params();
  ContextPtr base = base_of_product(ctx);
  YDecomposition out;
  for (const auto& [full_beta, c] : P.terms()) {
    Partials gamma(full_beta.begin(), full_beta.begin() + nx);
    Partials beta(full_beta.begin() + nx, full_beta.end());
    BigRat beta_fact(1);
    for (unsigned b : beta) beta_fact *= BigRat(factorial(b));
    for (const auto& [e, coeff] : c.terms()) {
      Exponents alpha(e.begin() + nx, e.begin() + nx + ny);
      Exponents be(base->num_slots(), 0);
      for (std::size_t i = 0; i < nx; ++i) be[i] = e[i];
      for (std::size_t i = 0; i < np; ++i) be[nx + i] = e[nx + ny + i];
      auto it = out.try_emplace({alpha, beta}, base).first;
      it->second.add_term(gamma, MPoly::monomial(base, be, coeff * beta_fact));
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// Inverse of decompose_in_y.
inline WeylOp recompose_from_y(const YDecomposition& blocks, const ContextPtr& product) {
  const std::size_t nx = product->num_x(), ny = product->num_y(), np = product->num_params();
  WeylOp P(product);
  for (const auto& [key, block] : blocks) {
    const auto& [alpha, beta] = key;
    BigRat inv_fact(1);
    for (unsigned b : beta) inv_fact /= BigRat(factorial(b));
    for (const auto& [gamma, c] : block.terms()) {
      Partials full(gamma);
      full.insert(full.end(), beta.begin(), beta.end());
      MPoly coeff(product);
      for (const auto& [e, v] : c.terms()) {
        Exponents pe(product->num_slots(), 0);
        for (std::size_t i = 0; i < nx; ++i) pe[i] = e[i];
        for (std::size_t i = 0; i < ny; ++i) pe[nx + i] = alpha[i];
        for (std::size_t i = 0; i < np; ++i) pe[nx + ny + i] = e[nx + i];
        coeff.add_term(pe, v * inv_fact);
      }
      P.add_term(full, coeff);
    }
  }
  return P;
}

inline int weight_shift(const YBlockKey& key) {
  int d = 0;
  for (unsigned b : key.second) d += static_cast<int>(b);
  for (unsigned a : key.first) d -= static_cast<int>(a);
  return d;
}

struct TransportError : Error {
  TransportError(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

// Turns a verified certificate for g = sum f_i y_i into an ideal certificate
// for (f_1, ..., f_r), following the multigraded rewriting of the functional
// equation: the block (alpha, beta) with |beta| - |alpha| = 1 contributes
//   (alpha!/beta!) prod binom(s_i, alpha_i) P_{alpha,beta}(s_1 + ... + s_r)
// acting on f^(s + beta - alpha).
//
// Blocks with |beta| - |alpha| != 1 change the y-degree by a different amount,
// so in a valid certificate their sum must annihilate g^(s+1) on its own; they
// are dropped after checking exactly that, and rejected otherwise.
inline IdealCert transport_certificate(const PrincipalCert& cert, const GenTuple& F_in) {
  const ContextPtr& pctx = cert.op.context();
  const std::size_t r = F_in.size();
  if (pctx->num_y() != r || pctx->num_x() != F_in.context()->num_vars())
    throw ContextMismatch("certificate context must have the generators' variables as x and one y per generator");
  if (pctx->num_params() != 1) throw ContextMismatch("certificate context must have a single parameter");

  GenTuple F = twisted(F_in);
  const ContextPtr& bctx = F.context();

  MPoly g(pctx);
  for (std::size_t i = 0; i < r; ++i) g += into_context(F_in[i], pctx) * MPoly::slot_variable(pctx, pctx->y_slot(i));
  if (VerifyResult v = verify_principal(cert, g); !v)
    throw TransportError("certificate_invalid", "input certificate does not verify for g: " + v.first_failure);

  UPoly b_reduced;
  try {
    b_reduced = reduce_bs(cert.b);
  } catch (const NotDivisible& e) {
    throw TransportError("not_divisible", e.what());
  }

  YDecomposition blocks = decompose_in_y(cert.op);
  YDecomposition off_weight;
  for (const auto& [key, op] : blocks)
    if (weight_shift(key) != 1) off_weight.emplace(key, op);
  if (!off_weight.empty()) {
    GenTuple G({g});
    Section image = apply(recompose_from_y(off_weight, pctx), Section::symbol(G, {1}), G);
    if (!image.h.is_zero())
      throw TransportError("inhomogeneous_blocks",
                           "blocks with |beta|-|alpha| != 1 do not cancel on g^(s+1); certificate cannot be transported");
  }

  // Substitution s -> s_1 + ... + s_r from the block context into bctx.
  ContextPtr block_ctx = base_of_product(pctx);
  MPoly sigma = param_sum(bctx);
  auto lift = [&](const MPoly& c) {
    std::vector<std::optional<std::size_t>> m(block_ctx->num_slots());
    for (std::size_t i = 0; i < block_ctx->num_vars(); ++i) m[i] = i;
    // Park s in the slot of s_1, then substitute the full sum.
    m[block_ctx->param_slot(0)] = bctx->param_slot(0);
    MPoly moved = remap(c, bctx, m);
    if (r == 1) return moved;
    return substitute(moved, bctx->param_slot(0), sigma);
  };

  std::map<std::vector<int>, WeylOp> by_shift;
  for (const auto& [key, op] : blocks) {
    if (weight_shift(key) != 1) continue;
    const auto& [alpha, beta] = key;
    std::vector<int> gamma(r);
    BigRat ratio(1);
    MPoly binoms(bctx, 1);
    for (std::size_t i = 0; i < r; ++i) {
      gamma[i] = static_cast<int>(beta[i]) - static_cast<int>(alpha[i]);
      ratio *= BigRat(factorial(alpha[i]), factorial(beta[i]));
      binoms *= binomial_in_param(bctx, i, alpha[i]);
    }
    // The section carries prod_{gamma_i<0} binom(s_i, -gamma_i); it divides
    // binom(s_i, alpha_i) because alpha_i >= -gamma_i.
    std::optional<MPoly> scalar = exact_divide(binoms, shift_prefactor(bctx, gamma));
    if (!scalar) throw Error("internal", "binomial prefactor does not divide");
    MPoly factor = *scalar * ratio;

    WeylOp q(bctx);
    for (const auto& [g_x, c] : op.terms()) q.add_term(g_x, factor * lift(c));
    auto it = by_shift.try_emplace(gamma, bctx).first;
    it->second += q;
  }

  IdealCert out;
  out.b = b_reduced;
  for (auto& [u, q] : by_shift) {
    if (q.is_zero()) continue;
    out.shifts.push_back(u);
    out.ops.push_back(std::move(q));
  }
  if (VerifyResult v = verify_ideal(out, F); !v)
    throw TransportError("transport_failed", "transported certificate does not verify: " + v.first_failure);
  return out;
}

}  // namespace bsz

#endif  // BSZ_TRANSPORT_HPP
