#ifndef BSZ_TESTS_PROPERTIES_HPP
#define BSZ_TESTS_PROPERTIES_HPP

// Randomized property suites shared by the unit tests and the acceptance run.
// Each suite returns a tally of cases and the first failure it saw.

#include <cstdint>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "random.hpp"

namespace bsz::testing {

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      if (failures == 0) first_failure = what;
      ++failures;
    }
  }
  Tally& operator+=(const Tally& o) {
    if (failures == 0 && o.failures) first_failure = o.first_failure;
    cases += o.cases;
    failures += o.failures;
    return *this;
  }
  bool ok() const { return failures == 0; }
};

// Pairwise coprime irreducible generators in x, y, so normalization is
// unambiguous.
inline std::vector<MPoly> coprime_pool(const ContextPtr& ctx) {
  return {parse_mpoly("x", ctx), parse_mpoly("y", ctx), parse_mpoly("x + y + 1", ctx),
          parse_mpoly("x^2 - y", ctx), parse_mpoly("x*y + 2", ctx)};
}

inline GenTuple random_tuple(Gen& g, const ContextPtr& space, std::size_t r) {
  std::vector<MPoly> pool = coprime_pool(space);
  std::vector<MPoly> pick;
  while (pick.size() < r) {
    const MPoly& c = pool[static_cast<std::size_t>(g.uniform(0, static_cast<int>(pool.size()) - 1))];
    bool dup = false;
    for (const auto& q : pick) dup = dup || q == c;
    if (!dup) pick.push_back(c);
  }
  return twisted(GenTuple(pick));
}

inline Section random_section(Gen& g, const GenTuple& F, int lo = -1, int hi = 1) {
  const ContextPtr& ctx = F.context();
  std::vector<int> c(F.size());
  for (auto& v : c) v = g.uniform(lo, hi);
  return Section(g.poly(ctx, slot_range(0, ctx->num_slots()), 3, 2), c);
}

// Associativity, distributivity, unit and [d_v, v] = 1.
inline Tally weyl_axioms(std::uint64_t seed, std::size_t n) {
  Gen g(seed);
  ContextPtr ctx = VarContext::make({"x", "y"}, {}, {"s"});
  auto all = slot_range(0, ctx->num_slots());
  Tally t;
  for (const char* v : {"x", "y"}) {
    WeylOp d = WeylOp::partial(ctx, v);
    WeylOp m = WeylOp::multiplication(MPoly::variable(ctx, v));
    t.check(compose(d, m) - compose(m, d) == WeylOp::identity(ctx), std::string("[d, v] != 1 for ") + v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    WeylOp a = g.op(ctx, 2, 3, all), b = g.op(ctx, 2, 3, all), c = g.op(ctx, 2, 3, all);
    bool ok = compose(compose(a, b), c) == compose(a, compose(b, c)) &&
              compose(a, b + c) == compose(a, b) + compose(a, c) &&
              compose(a + b, c) == compose(a, c) + compose(b, c) && compose(WeylOp::identity(ctx), a) == a &&
              compose(a, WeylOp::identity(ctx)) == a;
    t.check(ok, "operator algebra axiom failed for a = " + to_string(a) + ", b = " + to_string(b) +
                    ", c = " + to_string(c));
  }
  return t;
}

// apply(a o b) = apply(a) o apply(b) and linearity in operator and numerator.
inline Tally apply_laws(std::uint64_t seed, std::size_t n) {
  Gen g(seed);
  ContextPtr space = VarContext::make({"x", "y"});
  Tally t;
  for (std::size_t i = 0; i < n; ++i) {
    GenTuple F = random_tuple(g, space, static_cast<std::size_t>(g.uniform(1, 2)));
    const ContextPtr& ctx = F.context();
    auto all = slot_range(0, ctx->num_slots());
    WeylOp a = g.op(ctx, 2, 2, all), b = g.op(ctx, 2, 2, all);
    Section sec = random_section(g, F);
    Section sec2(g.poly(ctx, all, 2, 1), sec.shifts);
    bool hom = section_eq(apply(compose(a, b), sec, F), apply(a, apply(b, sec, F), F), F);
    bool lin_op = section_eq(apply(a + b, sec, F), add(apply(a, sec, F), apply(b, sec, F), F), F);
    bool lin_sec = section_eq(apply(a, Section(sec.h + sec2.h, sec.shifts), F),
                              add(apply(a, sec, F), apply(a, sec2, F), F), F);
    t.check(hom && lin_op && lin_sec, "apply law failed for a = " + to_string(a) + ", b = " + to_string(b) +
                                          ", h = " + to_string(sec.h));
  }
  return t;
}

// normalize preserves the element, is idempotent, and multiplying by f_i
// then normalizing raises exactly c_i.
inline Tally section_consistency(std::uint64_t seed, std::size_t n) {
  Gen g(seed);
  ContextPtr space = VarContext::make({"x", "y"});
  Tally t;
  for (std::size_t k = 0; k < n; ++k) {
    GenTuple F = random_tuple(g, space, static_cast<std::size_t>(g.uniform(1, 3)));
    Section sec = random_section(g, F, -2, 2);
    if (sec.h.is_zero()) sec.h = MPoly(F.context(), 1);
    // plant some generator factors in the numerator
    for (std::size_t i = 0; i < F.size(); ++i)
      if (g.coin()) sec.h *= F[i];
    Section nrm = normalize(sec, F);
    bool ok = section_eq(sec, nrm, F) && normalize(nrm, F).h == nrm.h && normalize(nrm, F).shifts == nrm.shifts;
    std::size_t i = static_cast<std::size_t>(g.uniform(0, static_cast<int>(F.size()) - 1));
    Section bumped = normalize(Section(sec.h * F[i], sec.shifts), F);
    std::vector<int> expect = nrm.shifts;
    expect[i] += 1;
    ok = ok && bumped.shifts == expect && bumped.h == nrm.h;
    std::vector<int> up = sec.shifts;
    up[i] += 1;
    ok = ok && section_eq(Section(sec.h * F[i], sec.shifts), Section(sec.h, up), F);
    t.check(ok, "section consistency failed for h = " + to_string(sec.h));
  }
  return t;
}

// Substituting s_i = m_i commutes with applying an operator.
inline Tally integer_specialization(std::uint64_t seed, std::size_t n) {
  Gen g(seed);
  ContextPtr space = VarContext::make({"x", "y"});
  Tally t;
  for (std::size_t k = 0; k < n; ++k) {
    GenTuple F = random_tuple(g, space, static_cast<std::size_t>(g.uniform(1, 2)));
    const ContextPtr& ctx = F.context();
    WeylOp op = g.op(ctx, 2, 3, slot_range(0, ctx->num_slots()));
    Section sec(g.poly(ctx, slot_range(0, ctx->num_vars()), 2, 2), std::vector<int>(F.size(), 0));
    std::vector<unsigned> m(F.size());
    for (auto& v : m) v = static_cast<unsigned>(g.uniform(2, 4));  // >= order, so exponents stay >= 0
    std::vector<int> me(m.begin(), m.end());
    MPoly honest = apply_to_poly(specialize(op, m), sec.h * F.power_product(me));
    MPoly twisted_then_sub = specialize(apply(op, sec, F), F, m);
    t.check(honest == twisted_then_sub, "specialization mismatch for op = " + to_string(op));
  }
  return t;
}

// Corpus certificates satisfy the functional equation at s = 0..3 on honest polynomials.
inline Tally certificate_specialization() {
  Tally t;
  SearchBounds bounds;
  bounds.op_order = 2;
  bounds.x_degree = 2;
  bounds.s_degree = 2;
  for (const char* text : {"x", "x^2", "x^3", "x^2 + y^2", "x*u + y*v"}) {
    ContextPtr ctx = VarContext::make({"x", "y", "u", "v"});
    MPoly f = parse_mpoly(text, ctx);
    SearchBounds b = bounds;
    if (std::string(text) == "x^3") b.op_order = 3;
    auto res = solve_principal(f, b);
    if (!res.found()) {
      t.check(false, std::string("no certificate for ") + text);
      continue;
    }
    for (unsigned m = 0; m <= 3; ++m)
      t.check(principal_identity_at(*res.cert, f, m), std::string("principal identity at s = ") +
                                                          std::to_string(m) + " fails for " + text);
  }
  for (std::size_t r : {1, 2, 3}) {
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(r);
    ContextPtr ctx = VarContext::make(names);
    std::vector<MPoly> gens;
    for (const auto& v : names) gens.push_back(MPoly::variable(ctx, v));
    GenTuple F(gens);
    SearchBounds b;
    b.op_order = 1;
    auto res = solve_ideal(F, b);
    if (!res.found()) {
      t.check(false, "no ideal certificate");
      continue;
    }
    std::vector<unsigned> m(r, 0);
    for (unsigned a = 0; a <= 3; ++a)
      for (unsigned c = 0; c <= 3; ++c) {
        m[0] = a;
        if (r > 1) m[1] = c;
        else if (c > 0) continue;
        if (r > 2) m[2] = (a + c) % 4;
        t.check(ideal_identity_at(*res.cert, F, m), "ideal identity fails at an integer point");
      }
  }
  return t;
}

// Measure profiles of random integer polynomials: entries in [0, 1], partial
// sums nondecreasing and at most 1, denominators dividing p^((m+1)n), stable
// under refinement of the counting level, and equal to a brute-force count.
inline Tally measure_mass(std::uint64_t seed, std::size_t n) {
  Gen g(seed);
  Tally t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t nv = static_cast<std::size_t>(g.uniform(1, 2));
    ContextPtr ctx = VarContext::make(nv == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"});
    std::size_t r = static_cast<std::size_t>(g.uniform(1, 2));
    std::vector<MPoly> subject;
    for (std::size_t i = 0; i < r; ++i) subject.push_back(g.nonzero_poly(ctx, slot_range(0, nv), 3, 3, true));
    std::uint64_t p = g.coin() ? 2 : 3;
    unsigned M = static_cast<unsigned>(g.uniform(0, nv == 1 ? 3 : 2));
    MeasureTable tab = measure_profile(subject, {p, M});
    BigRat partial(0);
    bool ok = tab.mu.size() == M + 1;
    for (unsigned m = 0; m <= M && ok; ++m) {
      const BigRat& mu = tab.mu[m];
      ok = mu >= 0 && mu <= 1;
      BigRat next = partial + mu;
      ok = ok && next >= partial && next <= 1;
      partial = next;
      BigInt scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), p, (m + 1) * nv);
      ok = ok && is_integer(mu * BigRat(scale));
    }
    unsigned m = static_cast<unsigned>(g.uniform(0, static_cast<int>(M)));
    ok = ok && measure_at_level(subject, p, m, m + 2) == tab.mu[m];
    ok = ok && brute_mu(subject, p, m, m + 1) == tab.mu[m];
    t.check(ok, "measure property failed for " + to_string(subject.front()) + " at p = " + std::to_string(p));
  }
  return t;
}

}  // namespace bsz::testing

#endif  // BSZ_TESTS_PROPERTIES_HPP
