#include <gtest/gtest.h>

#include <map>
#include <set>

#include "bnf/enumeration.hpp"
#include "support/oracles.hpp"
#include "support/reference_sets.hpp"

using namespace bnf;

namespace {

std::vector<std::string> strings(const std::vector<DecoratedTree>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(canonical(t));
  return out;
}

std::set<std::string> string_set(const std::vector<DecoratedTree>& ts) {
  const auto v = strings(ts);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Enumeration, SmallestDegrees) {
  EXPECT_EQ(strings(enumerate_valid(2)), (std::vector<std::string>{"(k)"}));
  EXPECT_EQ(strings(enumerate_valid(4)), (std::vector<std::string>{"(k)", "(n)", "(o)", "(r)"}));
  EXPECT_THROW(enumerate_valid(0), ConfigError);
}

TEST(Enumeration, ReferenceSets) {
  for (const auto& ref : support::reference_sets()) {
    EXPECT_EQ(strings(tree_class(ref.query).trees), ref.trees) << ref.label;
  }
}

TEST(Enumeration, MatchesUnprunedGeneratorToDegreeEight) {
  for (AssumptionMode mode : {AssumptionMode::at_most, AssumptionMode::at_least}) {
    EXPECT_EQ(string_set(enumerate_valid(8, {mode})), support::unpruned_valid(8, mode)) << mode_name(mode);
  }
}

TEST(Enumeration, MatchesHereditaryGeneratorToDegreeTwelve) {
  const auto oracle = support::hereditary_valid(12);
  std::map<int, std::set<std::string>> by_degree;
  for (const auto& t : enumerate_valid(12)) by_degree[degree(t)].insert(canonical(t));
  const std::map<int, std::size_t> expected{{2, 1}, {4, 3}, {6, 6}, {8, 12}, {10, 42}, {12, 96}};
  for (const auto& [d, count] : expected) {
    EXPECT_EQ(by_degree[d], oracle[static_cast<std::size_t>(d)]) << "degree " << d;
    EXPECT_EQ(by_degree[d].size(), count) << "degree " << d;
  }
}

TEST(Enumeration, MonotoneInMaxDegree) {
  const auto small = strings(enumerate_valid(8));
  std::vector<std::string> cut;
  for (const auto& t : enumerate_valid(12)) {
    if (degree(t) <= 8) cut.push_back(canonical(t));
  }
  EXPECT_EQ(small, cut);
}

TEST(Enumeration, ClassesAreSortedUniqueAndValid) {
  for (int m = 1; m <= 6; ++m) {
    std::vector<TreeClassQuery> qs{TreeClassQuery::res_below(m), TreeClassQuery::circ_exact(m),
                                   TreeClassQuery::n_exact(m)};
    if (m < 6) qs.push_back(TreeClassQuery::circ_range(m, 6));
    for (const auto& q : qs) {
      const auto s = strings(tree_class(q).trees);
      EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
      EXPECT_EQ(std::set<std::string>(s.begin(), s.end()).size(), s.size());
      for (const auto& t : tree_class(q).trees) {
        EXPECT_TRUE(is_valid(t));
        EXPECT_TRUE(in_class(t, q));
        EXPECT_LE(degree(t), q.max_degree());
      }
    }
  }
}

TEST(Enumeration, ResonantClassGrowsByRelabelledCircTrees) {
  for (int m = 2; m <= 5; ++m) {
    auto expected = string_set(tree_class(TreeClassQuery::res_below(m)).trees);
    for (const auto& t : tree_class(TreeClassQuery::circ_exact(m)).trees) {
      expected.insert(canonical(t.with_root(Decoration::r)));
    }
    EXPECT_EQ(string_set(tree_class(TreeClassQuery::res_below(m + 1)).trees), expected) << m;
  }
}

TEST(Enumeration, NAndCircClassesShareShapes) {
  for (int m = 2; m <= 6; ++m) {
    std::set<std::string> relabelled;
    for (const auto& t : tree_class(TreeClassQuery::n_exact(m)).trees) {
      relabelled.insert(canonical(t.with_root(Decoration::circ)));
    }
    EXPECT_EQ(relabelled, string_set(tree_class(TreeClassQuery::circ_exact(m)).trees)) << m;
  }
}

TEST(Enumeration, RangeClassExcludesLargeNNodes) {
  const auto range = tree_class(TreeClassQuery::circ_range(3, 6)).trees;
  EXPECT_FALSE(range.empty());
  for (const auto& t : range) {
    EXPECT_FALSE(has_n_node_of_degree_at_least(t, 6)) << canonical(t);
    EXPECT_GT(degree(t), 6);
  }
  EXPECT_THROW(tree_class(TreeClassQuery::circ_range(4, 4)), ConfigError);
}

TEST(Enumeration, CircClassDecomposesIntoRangeTreesAndGrafts) {
  // T_o^{m+1} = (degree-2(m+1) part of T_o^{m,m+1}) U {(o; T1, T2) valid : T1 in T_r^{<m}, T2 n-rooted}
  const std::map<int, std::size_t> sizes{{4, 4}, {5, 14}, {6, 32}};
  for (const auto& [target, size] : sizes) {
    const int m = target - 1;
    std::set<std::string> built;
    for (const auto& t : tree_class(TreeClassQuery::circ_range(m, target)).trees) {
      if (degree(t) == 2 * target) built.insert(canonical(t));
    }
    const auto valid = enumerate_valid(2 * target);
    for (const auto& t1 : tree_class(TreeClassQuery::res_below(m)).trees) {
      for (const auto& t2 : valid) {
        if (t2.decoration() != Decoration::n || degree(t1) + degree(t2) - 2 != 2 * target) continue;
        const DecoratedTree g = graft_comb(t1, std::span<const DecoratedTree>(&t2, 1), Decoration::circ);
        if (is_valid(g)) built.insert(canonical(g));
      }
    }
    const auto direct = string_set(tree_class(TreeClassQuery::circ_exact(target)).trees);
    EXPECT_EQ(built, direct) << target;
    EXPECT_EQ(direct.size(), size) << target;
  }
}

TEST(Enumeration, ResourceCap) {
  EXPECT_THROW(enumerate_valid(12, {AssumptionMode::at_most, 50}), ResourceLimitError);
  EXPECT_NO_THROW(enumerate_valid(12, {AssumptionMode::at_most, 1000}));
}

TEST(GraftComb, SingleNode) {
  const DecoratedTree n = DecoratedTree::leaf(Decoration::n);
  EXPECT_EQ(canonical(graft_comb(DecoratedTree::leaf(Decoration::circ), std::span<const DecoratedTree>(&n, 1),
                                 Decoration::circ)),
            "(o (o) (n))");
}

TEST(GraftComb, InnerNodesAreCircAndRootIsChosen) {
  const std::vector<DecoratedTree> tail(3, DecoratedTree::leaf(Decoration::n));
  const DecoratedTree comb = graft_comb(DecoratedTree::leaf(Decoration::k), tail, Decoration::r);
  EXPECT_EQ(canonical(comb), "(r (o (o (k) (n)) (n)) (n))");
  EXPECT_TRUE(is_valid(comb));
}

TEST(GraftComb, RejectsBadInput) {
  const std::vector<DecoratedTree> ok{DecoratedTree::leaf(Decoration::n)};
  const std::vector<DecoratedTree> bad{DecoratedTree::leaf(Decoration::circ)};
  const DecoratedTree base = DecoratedTree::leaf(Decoration::circ);
  EXPECT_THROW(graft_comb(base, {}, Decoration::circ), InvalidTreeError);
  EXPECT_THROW(graft_comb(base, bad, Decoration::circ), InvalidTreeError);
  EXPECT_THROW(graft_comb(DecoratedTree::leaf(Decoration::n), ok, Decoration::circ), InvalidTreeError);
  EXPECT_THROW(graft_comb(base, ok, Decoration::k), InvalidTreeError);
}
