#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace gradedpi;

namespace {

GroupPtr z2() { return FiniteGroup::cyclic(2); }
GroupPtr one() { return FiniteGroup::trivial(); }

KemerPoint pt(std::vector<int> alpha, int s) { return KemerPoint{std::move(alpha), s, false}; }

void expect_witness_sound(const GradedAlgebra& a, const LayoutResult& r) {
  ASSERT_TRUE(r.witness) << r.shape.str();
  const auto& w = *r.witness;
  EXPECT_TRUE(w.layout.consistent_with(w.polynomial));
  for (const auto& [g, ids] : w.layout.all_sets()) EXPECT_TRUE(is_alternating(w.polynomial, ids));
  const auto v = evaluate(w.polynomial, a, w.assignment);
  EXPECT_EQ(v, w.value);
  EXPECT_FALSE(is_zero_vector(v));
}

}  // namespace

TEST(Kemer, OrderIsAPartialOrder) {
  std::mt19937_64 rng(9);
  std::vector<KemerPoint> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(pt({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}, static_cast<int>(rng() % 3)));
  for (const auto& p : pts) {
    EXPECT_TRUE(kemer_leq(p, p));
    for (const auto& q : pts) {
      if (kemer_leq(p, q) && kemer_leq(q, p)) EXPECT_EQ(p, q);
      for (const auto& r : pts)
        if (kemer_leq(p, q) && kemer_leq(q, r)) EXPECT_TRUE(kemer_leq(p, r));
    }
  }
  const auto maxi = maximal_points(pts);
  for (const auto& p : pts) {
    bool covered = false;
    for (const auto& m : maxi) covered = covered || kemer_leq(p, m);
    EXPECT_TRUE(covered);
  }
  for (const auto& m : maxi)
    for (const auto& n : maxi)
      if (!(m == n)) EXPECT_FALSE(kemer_leq(m, n));
}

TEST(Kemer, OrderExamples) {
  EXPECT_TRUE(kemer_leq(pt({2}, 5), pt({4}, 0)));  // a larger alpha dominates any s
  EXPECT_TRUE(kemer_leq(pt({2}, 1), pt({2}, 3)));
  EXPECT_FALSE(kemer_leq(pt({2, 0}, 0), pt({1, 1}, 9)));
  EXPECT_TRUE(kemer_leq(pt({2}, 7), KemerPoint{{2}, 0, true}));
}

TEST(Kemer, KnownPoints) {
  struct Known {
    std::string name;
    GradedAlgebra a;
    KemerPoint point;
  };
  std::vector<Known> known{
      {"M2", matrix_algebra(one(), {0, 0}), pt({4}, 0)},
      {"UT2", upper_triangular(one(), {0, 0}), pt({2}, 1)},
      {"M2eg", matrix_algebra(z2(), {0, 1}), pt({2, 2}, 0)},
      {"FZ2", bsz_simple(z2(), SubgroupEmbedding::whole(z2()), TwoCocycle::trivial(z2()), {0}), pt({1, 1}, 0)},
  };
  for (const auto& k : known) {
    EXPECT_EQ(kemer_upper_bound(k.a), k.point) << k.name;
    const auto est = kemer_lower_bound(k.a, SearchParams{});
    ASSERT_EQ(est.lower.size(), 1u) << k.name;
    EXPECT_EQ(est.lower[0], k.point) << k.name;
    EXPECT_FALSE(est.budget_exhausted) << k.name;
    ASSERT_EQ(est.witnesses.size(), 1u);
    expect_witness_sound(k.a, est.witnesses[0]);
  }
}

TEST(Kemer, LowerBelowUpper) {
  std::vector<std::pair<std::string, GradedAlgebra>> algebras{
      {"UT3", upper_triangular(one(), {0, 0, 0})},
      {"UT3eg", upper_triangular(z2(), {0, 1, 1})},
      {"G4", grassmann(4)},
      {"FxF", direct_product(matrix_algebra(one(), {0}), matrix_algebra(one(), {0}))},
  };
  for (const auto& [name, a] : algebras) {
    const auto up = kemer_upper_bound(a);
    const auto est = kemer_lower_bound(a, SearchParams{});
    EXPECT_FALSE(est.lower.empty()) << name;
    for (const auto& p : est.lower) EXPECT_TRUE(kemer_leq(p, up)) << name << " " << p.str() << " vs " << up.str();
    for (const auto& w : est.witnesses) expect_witness_sound(a, w);
  }
}

TEST(Kemer, LargerBudgetNeverShrinksTheBound) {
  for (const auto& a : {upper_triangular(one(), {0, 0}), matrix_algebra(z2(), {0, 1})}) {
    std::vector<KemerPoint> prev;
    for (std::uint64_t budget : {50ull, 2000ull, 100000ull, 4000000ull}) {
      SearchParams p;
      p.node_budget = budget;
      const auto est = kemer_lower_bound(a, p);
      for (const auto& q : prev) {
        bool covered = false;
        for (const auto& r : est.lower) covered = covered || kemer_leq(q, r);
        EXPECT_TRUE(covered) << a.description << " budget " << budget << " lost " << q.str();
      }
      prev = est.lower;
    }
  }
}

TEST(Kemer, GroupAlgebraNeedsTwoFolds) {
  const auto fz2 = bsz_simple(z2(), SubgroupEmbedding::whole(z2()), TwoCocycle::trivial(z2()), {0});
  SearchParams p;
  p.nu = 2;
  const auto est = kemer_lower_bound(fz2, p);
  ASSERT_EQ(est.lower.size(), 1u);
  EXPECT_EQ(est.lower[0], pt({1, 1}, 0));
  expect_witness_sound(fz2, est.witnesses[0]);
}

TEST(Kemer, MatrixUnitTour) {
  EXPECT_EQ(matrix_unit_tour(2), (std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}, {1, 0}}));
  for (int k = 1; k <= 4; ++k) {
    const auto t = matrix_unit_tour(k);
    ASSERT_EQ(t.size(), static_cast<std::size_t>(k * k));
    std::set<std::pair<int, int>> seen(t.begin(), t.end());
    EXPECT_EQ(seen.size(), t.size());
    EXPECT_EQ(t.front().first, 0);
    EXPECT_EQ(t.back().second, 0);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) EXPECT_EQ(t[i].second, t[i + 1].first);
  }
}

TEST(Kemer, FullWitnessForSimpleAlgebras) {
  std::vector<GradedAlgebra> simple{
      matrix_algebra(one(), {0, 0}),
      matrix_algebra(z2(), {0, 1}),
      matrix_algebra(FiniteGroup::cyclic(3), {0, 1, 2}),
      bsz_simple(z2(), SubgroupEmbedding::whole(z2()), TwoCocycle::trivial(z2()), {0, 0}),
  };
  for (const auto& a : simple) {
    for (int nu : {1, 2}) {
      const auto w = full_witness_simple(a, nu);
      EXPECT_TRUE(w.nonzero) << a.description << " nu=" << nu;
      EXPECT_TRUE(w.sets_alternating);
      EXPECT_EQ(evaluate(w.polynomial, a, w.assignment), w.value);
      // each copy has one set per degree of size dim A_g
      for (const auto& [g, sets] : w.layout.small_sets) {
        EXPECT_EQ(static_cast<int>(sets.size()), nu);
        for (const auto& s : sets) EXPECT_EQ(static_cast<int>(s.size()), a.dim_of_degree(g));
      }
    }
  }
  EXPECT_THROW(full_witness_simple(upper_triangular(one(), {0, 0}), 1), std::invalid_argument);
}

TEST(Kemer, ProductOfMatrixAndTriangular) {
  const auto m2 = matrix_algebra(one(), {0, 0});
  const auto ut2 = upper_triangular(one(), {0, 0});
  const auto chk = kemer_set_product_check({&m2, &ut2}, SearchParams{});
  EXPECT_TRUE(chk.passed);
  EXPECT_EQ(chk.factor_points, (std::vector<KemerPoint>{pt({2}, 1), pt({4}, 0)}));
  EXPECT_EQ(chk.product_points, (std::vector<KemerPoint>{pt({4}, 0)}));
}
