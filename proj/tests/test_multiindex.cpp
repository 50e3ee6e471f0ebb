#include "isotuple/multiindex.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace isotuple;

TEST(MultiIndex, OrderAndPrinting) {
  const MultiIndex a{2, 0, 3};
  EXPECT_EQ(a.order(), 5u);
  EXPECT_EQ(a.size(), 3u);
  std::ostringstream os;
  os << a;
  EXPECT_EQ(os.str(), "(2,0,3)");
  EXPECT_THROW(MultiIndex(std::vector<unsigned>{}), std::invalid_argument);
}

TEST(Compositions, SmallCasesInOrder) {
  const auto c = compositions(2, 2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], (MultiIndex{2, 0}));
  EXPECT_EQ(c[1], (MultiIndex{1, 1}));
  EXPECT_EQ(c[2], (MultiIndex{0, 2}));
  EXPECT_EQ(compositions(3, 0).size(), 1u);
  EXPECT_EQ(compositions(1, 7).size(), 1u);
  EXPECT_THROW(compositions(0, 1), std::invalid_argument);
}

TEST(Compositions, CountDistinctAndOrderProperty) {
  for (std::size_t d = 1; d <= 5; ++d) {
    for (unsigned j = 0; j <= 8; ++j) {
      const auto c = compositions(d, j);
      EXPECT_EQ(c.size(), oracle::pascal(j + d - 1, d - 1)) << d << "," << j;
      std::set<MultiIndex> unique(c.begin(), c.end());
      EXPECT_EQ(unique.size(), c.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        EXPECT_EQ(c[k].order(), j);
        if (k) EXPECT_GT(c[k - 1], c[k]);
      }
    }
  }
}

TEST(Binomial, MatchesPascal) {
  for (unsigned m = 0; m <= 40; ++m)
    for (unsigned j = 0; j <= m + 1; ++j) EXPECT_EQ(binomial(m, j), oracle::pascal(m, j));
}

TEST(Binomial, LargeExactAndOverflow) {
  EXPECT_EQ(binomial(62, 31), 465428353255261088ull);
  EXPECT_EQ(binomial(67, 33), 14226520737620288370ull);
  EXPECT_THROW(binomial(70, 35), OverflowError);
  EXPECT_EQ(binomial(1000, 1), 1000u);
}

TEST(Multinomial, SumsToPowerOfD) {
  // sum_{|alpha|=j} j!/alpha! = d^j
  for (std::size_t d = 1; d <= 4; ++d) {
    for (unsigned j = 0; j <= 10; ++j) {
      std::uint64_t total = 0, expect = 1;
      for (unsigned k = 0; k < j; ++k) expect *= d;
      for (const auto& a : compositions(d, j)) total += multinomial(j, a);
      EXPECT_EQ(total, expect);
    }
  }
}

TEST(Multinomial, ValuesAndErrors) {
  EXPECT_EQ(multinomial(4, MultiIndex{2, 1, 1}), 12u);
  EXPECT_EQ(multinomial(0, MultiIndex{0, 0}), 1u);
  EXPECT_THROW(multinomial(3, MultiIndex{1, 1}), std::invalid_argument);
  EXPECT_THROW(multinomial(40, MultiIndex{10, 10, 10, 10}), OverflowError);
}
