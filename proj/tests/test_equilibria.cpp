#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.hpp"

using namespace nashrand;
using testsupport::from_mat;
using testsupport::ints;

namespace {

Game coordination() { return Game(IntMatrix::identity(2), IntMatrix::identity(2)); }

Game matching_pennies() {
  return Game(IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}, std::nullopt, BigInteger(1));
}

std::vector<BigInteger> example_x_numerators() { return ints({6, 2, 3, 1, 4, 5, 4, 9}); }

// Independent equal-size support enumeration: Gauss-Jordan over the rationals
// for each side, then the explicit deviation test on the assembled profile.
std::vector<std::pair<oracle::QVec, oracle::QVec>> oracle_equilibria(const oracle::Mat& a,
                                                                     const oracle::Mat& b) {
  const std::size_t n = a.size();
  std::vector<std::pair<oracle::QVec, oracle::QVec>> out;
  for (unsigned rows = 1; rows < (1u << n); ++rows) {
    for (unsigned cols = 1; cols < (1u << n); ++cols) {
      std::vector<std::size_t> I, J;
      for (std::size_t i = 0; i < n; ++i) {
        if (rows >> i & 1) I.push_back(i);
        if (cols >> i & 1) J.push_back(i);
      }
      if (I.size() != J.size()) continue;
      const std::size_t k = I.size();
      // Unknowns (w_1..w_k, value); rows: indifference over the other side, sum = 1.
      auto side = [&](const std::vector<std::size_t>& own, const std::vector<std::size_t>& other,
                      auto payoff) -> std::optional<oracle::QVec> {
        oracle::Mat m(k + 1, std::vector<mpz_class>(k + 1, 0));
        oracle::QVec rhs(k + 1, 0);
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t c = 0; c < k; ++c) m[r][c] = payoff(own[c], other[r]);
          m[r][k] = -1;
        }
        for (std::size_t c = 0; c < k; ++c) m[k][c] = 1;
        rhs[k] = 1;
        auto s = oracle::solve_rational(m, rhs);
        if (!s) return std::nullopt;
        oracle::QVec full(n, 0);
        for (std::size_t c = 0; c < k; ++c) {
          if ((*s)[c] <= 0) return std::nullopt;
          full[own[c]] = (*s)[c];
        }
        return full;
      };
      auto x = side(I, J, [&](std::size_t o, std::size_t t) { return b[o][t]; });
      if (!x) continue;
      auto y = side(J, I, [&](std::size_t o, std::size_t t) { return a[t][o]; });
      if (!y) continue;
      if (oracle::is_nash_by_deviation(a, b, *x, *y)) out.emplace_back(*x, *y);
    }
  }
  return out;
}

std::string key(const oracle::QVec& x, const oracle::QVec& y) {
  std::string s;
  for (const auto& v : x) s += v.get_str() + ",";
  s += "|";
  for (const auto& v : y) s += v.get_str() + ",";
  return s;
}

}  // namespace

TEST(PureNash, Coordination) {
  const auto p = pure_nash(coordination());
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], Profile(MixedStrategy::pure(2, 0), MixedStrategy::pure(2, 0)));
  EXPECT_EQ(p[1], Profile(MixedStrategy::pure(2, 1), MixedStrategy::pure(2, 1)));
}

TEST(PureNash, NoneForExampleAndPennies) {
  EXPECT_TRUE(pure_nash(example1_game()).empty());
  EXPECT_TRUE(pure_nash(matching_pennies()).empty());
}

TEST(SupportEnumeration, ExampleOne) {
  const SolveReport r = support_enumeration(example1_game());
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].x.numerators(), example_x_numerators());
  EXPECT_EQ(r.equilibria[0].x.denominator(), 34);
  EXPECT_EQ(r.equilibria[0].y, MixedStrategy::uniform(8));
  EXPECT_FALSE(r.degenerate_flag);
  EXPECT_EQ(r.enumerated_supports, 12869u);  // sum_k C(8,k)^2 = C(16,8) - 1
}

TEST(SupportEnumeration, ExampleTwo) {
  const SolveReport r = support_enumeration(example2_game());
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].x.numerators(), example_x_numerators());
  EXPECT_EQ(r.equilibria[0].y.numerators(), ints({9, 4, 5, 4, 1, 3, 2, 6}));
  EXPECT_EQ(r.equilibria[0].y.denominator(), 34);
}

TEST(SupportEnumeration, CoordinationMatchesGridOracle) {
  const SolveReport r = support_enumeration(coordination());
  ASSERT_EQ(r.equilibria.size(), 3u);
  EXPECT_EQ(r.equilibria[2], Profile(MixedStrategy::uniform(2), MixedStrategy::uniform(2)));
  const auto a = testsupport::to_mat(IntMatrix::identity(2));
  std::set<std::pair<std::string, std::string>> grid_ne;
  for (const auto& x : oracle::grid(2, 12))
    for (const auto& y : oracle::grid(2, 12))
      if (oracle::is_nash_by_deviation(a, a, x, y))
        grid_ne.emplace(x[0].get_str(), y[0].get_str());
  std::set<std::pair<std::string, std::string>> found;
  for (const auto& p : r.equilibria)
    found.emplace(p.x.probability(0).get_str(), p.y.probability(0).get_str());
  EXPECT_EQ(found, grid_ne);
}

TEST(SupportEnumeration, AgreesWithOracleOnRandomGames) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto a = oracle::random_matrix(rng, n, -20, 20);
    const auto b = oracle::random_matrix(rng, n, -20, 20);
    const Game g(from_mat(a), from_mat(b));
    const SolveReport r = support_enumeration(g);
    for (const auto& p : r.equilibria) EXPECT_TRUE(is_nash(g, p));
    const auto expected = oracle_equilibria(a, b);
    if (r.degenerate_flag) continue;
    EXPECT_EQ(r.equilibria.size(), expected.size());
    std::set<std::string> found, wanted;
    for (const auto& p : r.equilibria)
      found.insert(key(testsupport::probabilities(p.x), testsupport::probabilities(p.y)));
    for (const auto& [x, y] : expected) wanted.insert(key(x, y));
    EXPECT_EQ(found, wanted);
  }
}

TEST(SupportEnumeration, DegenerateFlag) {
  const SolveReport r = support_enumeration(Game(IntMatrix(2), IntMatrix(2)));
  EXPECT_TRUE(r.degenerate_flag);
  EXPECT_EQ(r.c1_min, 1);
}

TEST(SupportEnumeration, DimensionLimit) {
  try {
    support_enumeration(beta_game(11));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionTooLarge);
  }
  EXPECT_NO_THROW(support_enumeration(Game(IntMatrix::identity(3), IntMatrix::identity(3)), 3));
  EXPECT_THROW(support_enumeration(Game(IntMatrix::identity(3), IntMatrix::identity(3)), 2),
               Error);
}

TEST(SupportEnumeration, EarlyStopVisitor) {
  std::size_t seen = 0;
  const auto stats = for_each_equilibrium(coordination(), EnumerationOptions{},
                                          [&](const Profile&, const SupportPair&) {
                                            ++seen;
                                            return false;
                                          });
  EXPECT_EQ(seen, 1u);
  EXPECT_TRUE(stats.stopped_early);
}

TEST(MinComplexities, Examples) {
  EXPECT_EQ(min_complexities(example1_game()), std::make_pair(BigInteger(34), BigInteger(8)));
  EXPECT_EQ(min_complexities(example2_game()), std::make_pair(BigInteger(34), BigInteger(34)));
  EXPECT_EQ(min_complexities(coordination()), std::make_pair(BigInteger(1), BigInteger(1)));
}

TEST(MinComplexities, CappedSupportsCanMissEquilibria) {
  try {
    min_complexities(matching_pennies(), EnumerationOptions{10, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoEquilibriumFound);
  }
}

TEST(FullyMixed, Examples) {
  const auto p = fully_mixed_ne(example1_game());
  ASSERT_TRUE(p);
  EXPECT_EQ(p->x.numerators(), example_x_numerators());
  EXPECT_EQ(fully_mixed_ne(coordination()),
            Profile(MixedStrategy::uniform(2), MixedStrategy::uniform(2)));
  EXPECT_FALSE(fully_mixed_ne(Game(IntMatrix::identity(2), IntMatrix{{1, 1}, {0, 1}})));
  EXPECT_THROW(fully_mixed_ne(Game(IntMatrix::identity(2), IntMatrix{{1, 1}, {1, 1}})), Error);
}

TEST(BoundedExistence, Examples) {
  EXPECT_TRUE(bounded_ne_exists(example1_game(), 34, 8));
  EXPECT_FALSE(bounded_ne_exists(example1_game(), 33, 8));
  EXPECT_FALSE(bounded_ne_exists(example1_game(), 34, 7));
  EXPECT_TRUE(bounded_ne_exists(coordination(), 1, 1));
  EXPECT_THROW(bounded_ne_exists(coordination(), 0, 1), Error);
}

TEST(UpperBound, MatchingPennies) {
  const auto [b1, b2] = complexity_upper_bound(matching_pennies());
  EXPECT_EQ(b1, 336);
  EXPECT_EQ(b2, 336);
}

TEST(UpperBound, ZeroGameStillPositive) {
  EXPECT_EQ(complexity_upper_bound(Game(IntMatrix(2), IntMatrix(2))).first, 336);
}

TEST(UpperBound, UsesOpponentRelevantMatrix) {
  const Game g(IntMatrix{{5, 0}, {0, 1}}, IntMatrix{{0, 1}, {1, 0}});
  const auto [b1, b2] = complexity_upper_bound(g);
  EXPECT_EQ(b1, 336);
  // 6 * ceil(25 * 5^2.5) = 6 * ceil(1397.54...) = 8388.
  EXPECT_EQ(b2, 8388);
  EXPECT_GE(complexity_upper_bound(example1_game()).first, 34);
}

TEST(Imitation, SupportContainmentAndUniformResponse) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Game g(IntMatrix::identity(n), from_mat(oracle::random_matrix(rng, n, 0, 1)));
    for (const auto& p : support_enumeration(g).equilibria) {
      const auto sx = p.x.support(), sy = p.y.support();
      EXPECT_TRUE(std::includes(sy.begin(), sy.end(), sx.begin(), sx.end()));
      EXPECT_EQ(p.y, MixedStrategy::uniform_on(n, sy));
    }
  }
}

TEST(FullyMixed, ComplexityBoundedByCofactorSum) {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Game g(from_mat(oracle::random_matrix(rng, n, 0, 1)),
                 from_mat(oracle::random_matrix(rng, n, 0, 1)));
    if (det(g.a()) == 0 || det(g.b()) == 0) continue;
    const auto p = fully_mixed_ne(g);
    if (!p) continue;
    ++checked;
    EXPECT_LE(complexity(p->x), abs(cofactor_sum(g.b())));
    EXPECT_LE(complexity(p->y), abs(cofactor_sum(g.a())));
  }
  EXPECT_GT(checked, 10);
}
