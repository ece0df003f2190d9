#include <gtest/gtest.h>

#include "support/properties.hpp"

using namespace bnf;

TEST(CombSymmetry, ExhaustiveOverPartsUpToDegreeEight) {
  const auto tally = support::comb_symmetry(8, 3);
  EXPECT_TRUE(tally.ok()) << tally.failures << " of " << tally.instances << ", first: " << tally.first_failure;
  EXPECT_GT(tally.instances, 500);
}

TEST(CombSymmetry, ExtendingBaseAddsItsOwnComb) {
  // grafting one n-leaf onto (o (o (k) (n)) (n)) gives a comb three deep:
  // S = 3!, not 1! * S(base) = 2
  const DecoratedTree t = parse_tree("(o (o (o (k) (n)) (n)) (n))");
  EXPECT_EQ(symmetry_factor(t), 6u);
  EXPECT_TRUE(support::extends_comb(parse_tree("(o (o (k) (n)) (n))"), 4));
}
