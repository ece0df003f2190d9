#include <gtest/gtest.h>

#include <algorithm>

#include "bnf/enumeration.hpp"
#include "bnf/trees.hpp"

using namespace bnf;

namespace {

DecoratedTree T(const char* s) { return parse_tree(s); }

bool has_violation(const DecoratedTree& t, Rule r, AssumptionMode mode = AssumptionMode::at_most) {
  const auto v = validate_tree(t, mode).violations;
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == r; });
}

}  // namespace

TEST(Trees, WorkedExamplesAreValid) {
  const DecoratedTree first = T("(o (o) (n))");
  const DecoratedTree second = T("(r (o (k) (n)) (n))");
  EXPECT_TRUE(is_valid(first));
  EXPECT_TRUE(is_valid(second));
  EXPECT_EQ(degree(first), 6);
  EXPECT_EQ(degree(second), 6);
  EXPECT_EQ(symmetry_factor(first), 1u);
  EXPECT_EQ(symmetry_factor(second), 2u);
}

TEST(Trees, LeafDegreesAndFactors) {
  EXPECT_EQ(degree(DecoratedTree::leaf(Decoration::k)), 2);
  for (Decoration d : {Decoration::circ, Decoration::n, Decoration::r}) {
    const auto leaf = DecoratedTree::leaf(d);
    EXPECT_EQ(degree(leaf), 4);
    EXPECT_EQ(symmetry_factor(leaf), 1u);
    EXPECT_EQ(symmetry_factor(leaf, 4), 5u);
  }
}

TEST(Trees, DegreeCountsLeavesAndEdges) {
  const DecoratedTree t = T("(o (o (o (k) (n)) (n)) (n))");
  // 1 k-leaf, 3 other leaves, 6 edges
  EXPECT_EQ(degree(t), 2 * 1 + 4 * 3 - 6);
}

TEST(Trees, ConstraintViolations) {
  EXPECT_TRUE(has_violation(T("(o (o) (o))"), Rule::a));
  EXPECT_TRUE(has_violation(T("(o (n) (n))"), Rule::b));
  EXPECT_TRUE(has_violation(T("(k (o) (n))"), Rule::c));
  EXPECT_TRUE(has_violation(T("(o (k) (n))"), Rule::c));  // k-leaf under the root
  EXPECT_TRUE(has_violation(T("(o (r (k) (n)) (n))"), Rule::c));  // k-leaf under an r-node
  EXPECT_TRUE(has_violation(T("(o (o) (n (o) (n)))"), Rule::i));  // |T1| = 4 < 6 = |T2|
  EXPECT_TRUE(has_violation(T("(r (r (o (k) (n)) (n)) (n))"), Rule::ii));  // |T1| = 6 >= 4
  EXPECT_TRUE(is_valid(T("(o (r) (n (o) (n)))")));  // |T1| = 4 < 6
  EXPECT_TRUE(is_valid(T("(k)")));
}

TEST(Trees, ViolationPathsPointAtTheNode) {
  const auto report = validate_tree(T("(o (o (o) (o)) (n))"));
  ASSERT_FALSE(report.valid);
  EXPECT_EQ(report.violations.front(), (Violation{"L", Rule::a}));
}

TEST(Trees, NestedClauseDependsOnMode) {
  // T1 = (o (r) (n (o) (n))) has |T1| = 8 and right subtree of degree 6;
  // against an n-leaf (degree 4) only the >= reading accepts it.
  const DecoratedTree t = T("(o (o (r) (n (o) (n))) (n))");
  EXPECT_TRUE(has_violation(t, Rule::i, AssumptionMode::at_most));
  EXPECT_TRUE(is_valid(t, AssumptionMode::at_least));
  // and conversely
  const DecoratedTree u = T("(o (o (o) (n)) (n (o) (n)))");
  EXPECT_TRUE(is_valid(u, AssumptionMode::at_most));
  EXPECT_TRUE(has_violation(u, Rule::i, AssumptionMode::at_least));
}

TEST(Trees, ModeNames) {
  EXPECT_EQ(mode_name(AssumptionMode::at_most), "le");
  EXPECT_EQ(mode_from_name("ge"), AssumptionMode::at_least);
  EXPECT_FALSE(mode_from_name("eq").has_value());
}

TEST(SymmetryFactor, RejectsInvalidTrees) {
  EXPECT_THROW(symmetry_factor(T("(o (k) (n))")), InvalidTreeError);
  EXPECT_THROW(symmetry_factor(T("(o (n) (n))")), InvalidTreeError);
}

TEST(SymmetryFactor, CombRuleAtEveryInternalDecoration) {
  EXPECT_EQ(symmetry_factor(T("(o (o (k) (n)) (n))")), 2u);
  EXPECT_EQ(symmetry_factor(T("(n (o (k) (n)) (n))")), 2u);
  EXPECT_EQ(symmetry_factor(T("(r (o (k) (n)) (n))")), 2u);
  EXPECT_EQ(symmetry_factor(T("(o (o (o (k) (n)) (n)) (n))")), 6u);
  // the comb is broken when degrees differ
  EXPECT_EQ(symmetry_factor(T("(o (o (o) (n)) (n (o) (n)))")), 1u);
  EXPECT_EQ(symmetry_factor(T("(o (o (k) (n)) (n))"), 1), 2u * 3u);
}

TEST(SymmetryFactor, TwoFactorialThreeFactorialShapeIsInvalid) {
  // (r; (o; k, n), T3) with S(T3) = 3! needs |T3| >= 8, while rule (i)
  // requires |(o; k, n)| = 4 >= |T3|.
  const DecoratedTree t3 = T("(n (o (o (k) (n)) (n)) (n))");
  ASSERT_EQ(symmetry_factor(t3), 6u);
  const DecoratedTree t = DecoratedTree::node(Decoration::r, T("(o (k) (n))"), t3);
  EXPECT_FALSE(is_valid(t, AssumptionMode::at_most));
  EXPECT_FALSE(is_valid(t, AssumptionMode::at_least));
  EXPECT_THROW(symmetry_factor(t), InvalidTreeError);
  EXPECT_EQ(detail::symmetry_recursion(t, 0), 6u);
}

TEST(Canonical, RenderAndParse) {
  EXPECT_EQ(canonical(DecoratedTree::leaf(Decoration::circ)), "(o)");
  EXPECT_EQ(T("(o (o) (n))"), DecoratedTree::node(Decoration::circ, DecoratedTree::leaf(Decoration::circ),
                                                   DecoratedTree::leaf(Decoration::n)));
  EXPECT_NE(T("(o (o) (n))"), T("(r (o) (n))"));
}

TEST(Canonical, ParseErrorsCarryPositions) {
  auto position = [](const char* s) -> std::size_t {
    try {
      parse_tree(s);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  EXPECT_EQ(position(""), 0u);
  EXPECT_EQ(position("(x)"), 1u);
  EXPECT_EQ(position("(o  (o) (n))"), 3u);
  EXPECT_EQ(position("(o (o) (n)"), 10u);
  EXPECT_EQ(position("(o (o))"), 6u);
  EXPECT_EQ(position("(o (o) (n) (n))"), 10u);
  EXPECT_EQ(position("(o) "), 3u);
  EXPECT_EQ(position("(o)(n)"), 3u);
}

TEST(Canonical, LatexAndDot) {
  const DecoratedTree t = T("(r (o (k) (n)) (n))");
  const std::string latex = render(t, TreeFormat::latex);
  EXPECT_NE(latex.find("\\begin{forest}"), std::string::npos);
  EXPECT_NE(latex.find("$r$"), std::string::npos);
  EXPECT_NE(latex.find("$\\circ$"), std::string::npos);
  const std::string dot = render(t, TreeFormat::dot);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("ordering=out"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 4);  // four edges
  EXPECT_EQ(render(t, TreeFormat::canonical), canonical(t));
}

TEST(TreeProperties, ExhaustiveToDegreeTwelve) {
  const auto levels = enumerate_components(12);
  std::size_t checked = 0;
  for (const auto& level : levels) {
    for (const auto& t : level) {
      const int d = degree(t);
      EXPECT_EQ(d % 2, 0);
      EXPECT_GE(d, 2);
      if (!t.is_leaf()) {
        EXPECT_EQ(d, degree(t.left()) + degree(t.right()) - 2) << canonical(t);
        for (Decoration relabel : {Decoration::circ, Decoration::n, Decoration::r}) {
          EXPECT_EQ(degree(t.with_root(relabel)), d);
        }
      }
      EXPECT_EQ(parse_tree(canonical(t)), t);
      ++checked;
    }
  }
  EXPECT_GT(checked, 150u);
}
