#include <gtest/gtest.h>

#include "bsz/bsz.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace bsz;

namespace {

MPoly P(const char* s, const ContextPtr& ctx) { return parse_mpoly(s, ctx); }
WeylOp D(const ContextPtr& ctx, const char* v) { return WeylOp::partial(ctx, v); }
WeylOp Mul(const char* s, const ContextPtr& ctx) { return WeylOp::multiplication(P(s, ctx)); }

GenTuple tuple1(const char* f, std::vector<std::string> vars = {"x"}) {
  auto ctx = VarContext::make(std::move(vars), {}, {"s"});
  return GenTuple({P(f, ctx)});
}

}  // namespace

TEST(Compose, CanonicalCommutation) {
  auto ctx = VarContext::make({"x", "y"});
  EXPECT_EQ(compose(D(ctx, "x"), Mul("x", ctx)), compose(Mul("x", ctx), D(ctx, "x")) + WeylOp::identity(ctx));
  EXPECT_EQ(to_string(compose(D(ctx, "x"), Mul("x", ctx))), "(1) + (x)*dx");
}

TEST(Compose, MultiplicationThenPartial) {
  auto ctx = VarContext::make({"x", "y"});
  EXPECT_EQ(to_string(compose(Mul("x", ctx), D(ctx, "x"))), "(x)*dx");
}

TEST(Compose, PartialsCommute) {
  auto ctx = VarContext::make({"x", "y"});
  EXPECT_EQ(compose(D(ctx, "x"), D(ctx, "y")), compose(D(ctx, "y"), D(ctx, "x")));
  EXPECT_EQ(to_string(compose(D(ctx, "x"), D(ctx, "y"))), "dx*dy");
}

TEST(Compose, ContextMismatch) {
  EXPECT_THROW(compose(D(VarContext::make({"x"}), "x"), D(VarContext::make({"y"}), "y")), ContextMismatch);
}

TEST(Compose, ParameterIsNotDifferentiable) {
  EXPECT_THROW(D(VarContext::make({"x"}, {}, {"s"}), "s"), InvalidArgument);
}

TEST(Apply, LeibnizOnSquare) {
  GenTuple F = tuple1("x^2");
  const auto& ctx = F.context();
  Section r = apply(D(ctx, "x"), Section::symbol(F, {0}), F);
  EXPECT_EQ(r.h, P("2*s*x", ctx));
  EXPECT_EQ(r.shifts, std::vector<int>{-1});
}

TEST(Apply, MultiplicationLeavesShift) {
  GenTuple F = tuple1("x");
  const auto& ctx = F.context();
  Section r = apply(Mul("x", ctx), Section::symbol(F, {0}), F);
  EXPECT_EQ(r.h, P("x", ctx));
  EXPECT_EQ(r.shifts, std::vector<int>{0});
}

// Expanding the two Leibniz applications by hand:
//   du g^(s+1) = (s+1) x g^s,  dx of that = (s+1) g^s + (s+1) s x u g^(s-1)
// and symmetrically for dy dv; since x u + y v = g the sum is (s+1)(s+2) g^s.
TEST(Apply, QuadricCertificateOperator) {
  GenTuple F = tuple1("x*u + y*v", {"x", "y", "u", "v"});
  const auto& ctx = F.context();
  WeylOp op = compose(D(ctx, "x"), D(ctx, "u")) + compose(D(ctx, "y"), D(ctx, "v"));
  Section r = apply(op, Section::symbol(F, {1}), F);
  EXPECT_TRUE(section_eq(r, Section(P("(s+1)*(s+2)", ctx), {0}), F));
  // independent check at s = 0..3 on honest polynomials
  for (unsigned m = 0; m <= 3; ++m) {
    MPoly g = P("x*u + y*v", ctx);
    MPoly lhs = apply_to_poly(op, pow(g, m + 1));
    MPoly rhs = pow(g, m) * BigRat((m + 1) * (m + 2));
    EXPECT_EQ(lhs, rhs) << "s = " << m;
  }
}

TEST(Apply, ContextMismatch) {
  GenTuple F = tuple1("x");
  EXPECT_THROW(apply(D(VarContext::make({"x"}), "x"), Section::symbol(F, {0}), F), ContextMismatch);
}

TEST(SectionEq, Examples) {
  GenTuple F = tuple1("x^2");
  const auto& ctx = F.context();
  EXPECT_TRUE(section_eq(Section(P("x^2", ctx), {-1}), Section::symbol(F, {0}), F));
  GenTuple G = tuple1("x", {"x", "y"});
  EXPECT_FALSE(section_eq(Section(P("x", G.context()), {0}), Section(P("y", G.context()), {0}), G));
  EXPECT_TRUE(section_eq(Section(P("2*s*x", ctx), {-1}), apply(D(ctx, "x"), Section::symbol(F, {0}), F), F));
}

TEST(Normalize, Examples) {
  GenTuple F = tuple1("x");
  const auto& ctx = F.context();
  Section a = normalize(Section(P("x^3", ctx), {-1}), F);
  EXPECT_EQ(a.h, MPoly(ctx, 1));
  EXPECT_EQ(a.shifts, std::vector<int>{2});
  Section b = normalize(Section(P("x + 1", ctx), {0}), F);
  EXPECT_EQ(b.h, P("x + 1", ctx));
  EXPECT_EQ(b.shifts, std::vector<int>{0});
  Section c = normalize(b, F);
  EXPECT_EQ(c.h, b.h);
  EXPECT_EQ(c.shifts, b.shifts);
}

TEST(Specialize, NegativeExponentRejected) {
  GenTuple F = tuple1("x");
  EXPECT_THROW(specialize(Section(MPoly(F.context(), 1), {-2}), F, {1}), InvalidArgument);
}

TEST(Properties, WeylAxioms) {
  auto t = bsz::testing::weyl_axioms(11, 200);
  EXPECT_TRUE(t.ok()) << t.first_failure;
  EXPECT_GE(t.cases, 200u);
}

TEST(Properties, ApplyIsAModuleAction) {
  auto t = bsz::testing::apply_laws(12, 150);
  EXPECT_TRUE(t.ok()) << t.first_failure;
}

TEST(Properties, SectionConsistency) {
  auto t = bsz::testing::section_consistency(13, 200);
  EXPECT_TRUE(t.ok()) << t.first_failure;
}

TEST(Properties, IntegerSpecialization) {
  auto t = bsz::testing::integer_specialization(14, 150);
  EXPECT_TRUE(t.ok()) << t.first_failure;
}
