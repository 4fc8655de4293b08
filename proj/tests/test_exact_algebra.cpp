#include <gtest/gtest.h>

#include "bsz/bsz.hpp"
#include "bsz/json_io.hpp"
#include "support/random.hpp"

using namespace bsz;
using bsz::testing::Gen;
using bsz::testing::slot_range;

namespace {

ContextPtr xy() { return VarContext::make({"x", "y"}); }
MPoly P(const char* s, const ContextPtr& ctx) { return parse_mpoly(s, ctx); }

}  // namespace

TEST(Rational, ParseCanonicalizes) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-2/-4")), "1/2");
  EXPECT_EQ(to_string(parse_rational("7")), "7");
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("a"), ParseError);
}

TEST(VarContext, RejectsDuplicates) {
  EXPECT_THROW(VarContext({"x", "x"}, {}, {}), InvalidArgument);
  EXPECT_THROW(VarContext({"x"}, {"y"}, {"x"}), InvalidArgument);
  EXPECT_THROW(VarContext({""}, {}, {}), InvalidArgument);
  VarContext c({"x"}, {"y1"}, {"s"});
  EXPECT_EQ(c.num_slots(), 3u);
  EXPECT_EQ(c.slot("s"), 2u);
  EXPECT_THROW(c.slot("z"), UnknownVariable);
}

TEST(PolyArith, DifferenceOfSquares) {
  auto ctx = xy();
  EXPECT_EQ(P("x + 1", ctx) * P("x - 1", ctx), P("x^2 - 1", ctx));
}

TEST(PolyArith, SelfSubtractionIsZero) {
  auto ctx = xy();
  MPoly f = P("3/2*x^2*y - y + 7", ctx);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_TRUE((f - f).terms().empty());
}

TEST(PolyArith, MultiplicativeIdentity) {
  auto ctx = VarContext::make({"x", "y"}, {"y1", "y2"});
  MPoly g = P("x*y1 + y*y2", ctx);
  EXPECT_EQ(g * MPoly(ctx, 1), g);
}

TEST(PolyArith, ContextMismatchThrows) {
  EXPECT_THROW(P("x", xy()) + P("x", VarContext::make({"x"})), ContextMismatch);
  EXPECT_THROW(P("x", xy()) * P("x", VarContext::make({"x"})), ContextMismatch);
}

TEST(PolyArith, EqualContextsByValueInteroperate) {
  MPoly a = P("x", xy()), b = P("y", xy());
  EXPECT_EQ(to_string(a + b), "x + y");
}

TEST(PolyArith, PrintingIsLeadingTermFirst) {
  auto ctx = VarContext::make({"x", "y"}, {}, {"s"});
  EXPECT_EQ(to_string(P("1 - y + 3/2*x^2*s", ctx)), "3/2*x^2*s - y + 1");
  EXPECT_EQ(to_string(MPoly(ctx)), "0");
}

TEST(Diff, Basic) {
  auto ctx = xy();
  EXPECT_EQ(diff(P("x^2", ctx), "x"), P("2*x", ctx));
  EXPECT_TRUE(diff(P("5", ctx), "x").is_zero());
  EXPECT_THROW(diff(P("x", ctx), "z"), UnknownVariable);
}

TEST(Diff, ReadsOffGeneratorFromG) {
  auto ctx = VarContext::make({"x", "y"}, {"y1", "y2"});
  EXPECT_EQ(diff(P("x*y1 + y*y2", ctx), "y1"), P("x", ctx));
}

TEST(ExactDivide, Examples) {
  auto ctx = xy();
  EXPECT_EQ(exact_divide(P("x^2 - 1", ctx), P("x - 1", ctx)), P("x + 1", ctx));
  EXPECT_FALSE(exact_divide(P("x", ctx), P("x + 1", ctx)).has_value());
  EXPECT_EQ(exact_divide(P("x^2*y + x*y^2", ctx), P("x*y", ctx)), P("x + y", ctx));
  EXPECT_THROW(exact_divide(P("x", ctx), MPoly(ctx)), InvalidArgument);
}

TEST(Substitute, SimultaneousInSameSlot) {
  auto ctx = VarContext::make({"x"}, {}, {"s1", "s2"});
  MPoly a = P("s1^2 + x", ctx);
  EXPECT_EQ(substitute(a, ctx->slot("s1"), P("s1 + s2", ctx)), P("s1^2 + 2*s1*s2 + s2^2 + x", ctx));
  EXPECT_EQ(substitute(a, ctx->slot("s1"), BigRat(3)), P("9 + x", ctx));
}

TEST(Parse, Errors) {
  auto ctx = xy();
  EXPECT_THROW(P("x +", ctx), ParseError);
  EXPECT_THROW(P("z", ctx), ParseError);
  EXPECT_THROW(P("(x", ctx), ParseError);
  EXPECT_EQ(P("-(x - 2/4)^2", ctx), P("-x^2 + x - 1/4", ctx));
}

TEST(SolveLinear, SingleEquation) {
  auto sol = solve_linear(LinearSystem::dense({{BigRat(2)}}, {BigRat(1)}));
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.x[0], BigRat(1, 2));
  EXPECT_TRUE(sol.nullspace.empty());
}

TEST(SolveLinear, TwoByTwo) {
  auto sol = solve_linear(LinearSystem::dense({{1, 1}, {1, -1}}, {BigRat(1), BigRat(1)}));
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.x, (std::vector<BigRat>{1, 0}));
}

TEST(SolveLinear, Infeasible) {
  EXPECT_FALSE(solve_linear(LinearSystem::dense({{BigRat(0)}}, {BigRat(1)})).feasible);
}

TEST(SolveLinear, NullspaceOfUnderdetermined) {
  auto sol = solve_linear(LinearSystem::dense({{1, 2, 3}}, {BigRat(6)}));
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.rank, 1u);
  EXPECT_EQ(sol.nullspace.size(), 2u);
  EXPECT_EQ(sol.x, (std::vector<BigRat>{6, 0, 0}));
}

TEST(SolveLinear, EmptySystem) {
  auto sol = solve_linear(LinearSystem(2));
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.nullspace.size(), 2u);
}

TEST(RationalRoots, Examples) {
  UPoly b = UPoly::linear(-1) * UPoly::linear(BigRat(-1, 2));
  auto f = rational_roots(b);
  ASSERT_EQ(f.roots.size(), 2u);
  EXPECT_EQ(f.roots[0], std::make_pair(BigRat(-1), 1u));
  EXPECT_EQ(f.roots[1], std::make_pair(BigRat(-1, 2), 1u));
  EXPECT_TRUE(f.remainder.is_one());

  auto g = rational_roots(UPoly::linear(-2) * UPoly::linear(-2));
  ASSERT_EQ(g.roots.size(), 1u);
  EXPECT_EQ(g.roots[0], std::make_pair(BigRat(-2), 2u));

  auto h = rational_roots(UPoly({1, 0, 1}));
  EXPECT_TRUE(h.roots.empty());
  EXPECT_EQ(h.remainder, UPoly({1, 0, 1}));

  EXPECT_THROW(rational_roots(UPoly()), InvalidArgument);
}

TEST(RationalRoots, ZeroRootAndScaledInput) {
  auto f = rational_roots(UPoly({0, 0, 6, 3}));  // 3 s^2 (s + 2)
  ASSERT_EQ(f.roots.size(), 2u);
  EXPECT_EQ(f.roots[0], std::make_pair(BigRat(-2), 1u));
  EXPECT_EQ(f.roots[1], std::make_pair(BigRat(0), 2u));
  EXPECT_EQ(f.remainder, UPoly::constant(3));
}

TEST(UPolyText, Factored) {
  EXPECT_EQ(to_factored_string(UPoly::linear(-1) * UPoly::linear(BigRat(-1, 2))), "(s+1)*(s+1/2)");
  EXPECT_EQ(to_factored_string(UPoly::constant(1)), "1");
  EXPECT_EQ(to_string(UPoly({1, 0, 1})), "s^2 + 1");
}

TEST(Json, PolynomialRoundTrip) {
  auto ctx = VarContext::make({"x", "y"}, {}, {"s1", "s2"});
  MPoly f = P("3/2*x^2*s1 - y*s2 + 1", ctx);
  Json j = to_json(f);
  EXPECT_EQ(j["terms"][0]["coeff"], "3/2");
  EXPECT_EQ(j["terms"][0]["exps"], Json::array({2, 0, 1, 0}));
  MPoly g = mpoly_from_json(j);
  EXPECT_EQ(to_string(g), to_string(f));
  EXPECT_EQ(*g.context(), *ctx);
}

TEST(Json, PolynomialErrors) {
  EXPECT_THROW(mpoly_from_json(Json::parse(R"({"terms": []})")), ParseError);
  EXPECT_THROW(mpoly_from_json(Json::parse(R"({"vars": ["x"], "terms": [{"coeff": "1", "exps": [1, 2]}]})")),
               ParseError);
  EXPECT_THROW(mpoly_from_json(Json::parse(R"({"vars": ["x"], "terms": [{"coeff": "1/0", "exps": [1]}]})")),
               ParseError);
  EXPECT_THROW(mpoly_from_json(Json::parse(R"({"vars": ["x"], "terms": [{"coeff": "1", "exps": [-1]}]})")),
               ParseError);
}

TEST(Json, UPolyRoundTrip) {
  UPoly b({BigRat(1, 2), BigRat(3, 2), BigRat(1)});
  EXPECT_EQ(to_json(b), Json::parse(R"(["1/2", "3/2", "1"])"));
  EXPECT_EQ(upoly_from_json(to_json(b)), b);
}

// --- properties --------------------------------------------------------------

TEST(Properties, RingAxioms) {
  Gen g(101);
  auto ctx = VarContext::make({"x", "y"}, {}, {"s"});
  auto all = slot_range(0, 3);
  for (int i = 0; i < 200; ++i) {
    MPoly a = g.poly(ctx, all, 4, 2), b = g.poly(ctx, all, 4, 2), c = g.poly(ctx, all, 4, 2);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a + b, b + a);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(Properties, ExactDivisionRecoversFactor) {
  Gen g(202);
  auto ctx = VarContext::make({"x", "y", "z"});
  auto all = slot_range(0, 3);
  for (int i = 0; i < 200; ++i) {
    MPoly a = g.poly(ctx, all, 4, 2);
    MPoly b = g.nonzero_poly(ctx, all, 3, 2);
    auto q = exact_divide(a * b, b);
    ASSERT_TRUE(q.has_value()) << to_string(a) << " / " << to_string(b);
    ASSERT_EQ(*q, a);
  }
}

TEST(Properties, SolverResidualAndNullspace) {
  Gen g(303);
  for (int k = 0; k < 150; ++k) {
    int rows = g.uniform(1, 6), cols = g.uniform(1, 6);
    std::vector<std::vector<BigRat>> a(static_cast<std::size_t>(rows), std::vector<BigRat>(static_cast<std::size_t>(cols)));
    for (auto& r : a)
      for (auto& v : r) v = g.coin() ? BigRat(0) : g.rat(3, 2);
    // duplicate a row combination now and then to force rank deficiency
    if (rows > 1 && g.coin()) {
      for (std::size_t j = 0; j < a[0].size(); ++j) a.back()[j] = a[0][j] * 2 - a[1 % a.size()][j];
    }
    std::vector<BigRat> x0(static_cast<std::size_t>(cols));
    for (auto& v : x0) v = g.rat(3, 3);
    std::vector<BigRat> b(a.size(), BigRat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < x0.size(); ++j) b[i] += a[i][j] * x0[j];
    LinearSystem sys = LinearSystem::dense(a, b);
    auto sol = solve_linear(sys);
    ASSERT_TRUE(sol.feasible);
    for (std::size_t i = 0; i < a.size(); ++i) {
      BigRat acc(0);
      for (std::size_t j = 0; j < x0.size(); ++j) acc += a[i][j] * sol.x[j];
      ASSERT_EQ(acc, b[i]);
      for (const auto& v : sol.nullspace) {
        BigRat z(0);
        for (std::size_t j = 0; j < v.size(); ++j) z += a[i][j] * v[j];
        ASSERT_EQ(z, 0);
      }
    }
    ASSERT_EQ(sol.rank + sol.nullspace.size(), static_cast<std::size_t>(cols));

    // perturbing the rhs of a dependent row makes it infeasible
    if (sol.rank < a.size()) {
      std::vector<std::vector<BigRat>> a2 = a;
      std::vector<BigRat> b2 = b;
      a2.push_back(a[0]);
      b2.push_back(b[0] + 1);
      ASSERT_FALSE(solve_linear(LinearSystem::dense(a2, b2)).feasible);
    }
  }
}

TEST(Properties, RootReconstruction) {
  Gen g(404);
  for (int k = 0; k < 150; ++k) {
    std::vector<std::pair<BigRat, unsigned>> planted;
    int count = g.uniform(0, 3);
    for (int i = 0; i < count; ++i) planted.emplace_back(g.rat(5, 4), static_cast<unsigned>(g.uniform(1, 2)));
    UPoly b = UPoly::from_roots(planted);
    if (g.coin()) b = b * UPoly({BigRat(g.uniform(1, 5)), BigRat(0), BigRat(1)});  // s^2 + k, no rational roots
    b = b * UPoly::constant(g.nonzero_rat());
    auto f = rational_roots(b);
    ASSERT_EQ(f.remainder * UPoly::from_roots(f.roots), b);
    for (std::size_t i = 1; i < f.roots.size(); ++i) ASSERT_LT(f.roots[i - 1].first, f.roots[i].first);
    for (const auto& [r, m] : planted) ASSERT_GE(f.multiplicity(r), m);
    ASSERT_TRUE(rational_roots(f.remainder).roots.empty());
  }
}
