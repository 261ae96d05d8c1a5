#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace gradedpi;

namespace {

GroupPtr z2() { return FiniteGroup::cyclic(2); }
GroupPtr one() { return FiniteGroup::trivial(); }

// Every basis product agrees with the product of the model matrices.
void expect_matches_model(const GradedAlgebra& a, const oracle::Model& m) {
  ASSERT_EQ(static_cast<int>(m.basis.size()), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    EXPECT_EQ(a.degree(i), m.degree[i]) << a.label(i);
    for (int j = 0; j < a.dim(); ++j) {
      const auto lib = m.element(a.multiply(a.basis(i), a.basis(j)));
      EXPECT_EQ(lib, oracle::mul(m.basis[i], m.basis[j])) << a.label(i) << " * " << a.label(j);
    }
  }
}

// J is a graded two-sided ideal and J^{n_A} = 0.
void expect_radical_sound(const GradedAlgebra& a) {
  const auto rad = radical(a);
  RowEchelon span(a.dim());
  for (const auto& v : rad.basis) span.add(v);
  for (const auto& v : rad.basis) {
    for (int i = 0; i < a.dim(); ++i) {
      EXPECT_TRUE(span.contains(a.multiply(v, a.basis(i))));
      EXPECT_TRUE(span.contains(a.multiply(a.basis(i), v)));
    }
  }
  std::vector<Element> power = rad.basis;
  for (int p = 1; p < rad.nilpotency_index; ++p) {
    EXPECT_FALSE(power.empty());
    std::vector<Element> next;
    for (const auto& x : power)
      for (const auto& y : rad.basis) {
        auto z = a.multiply(x, y);
        if (!is_zero_vector(z)) next.push_back(z);
      }
    power = next;
  }
  EXPECT_TRUE(power.empty()) << "J^" << rad.nilpotency_index << " != 0";
}

}  // namespace

TEST(Groups, Basics) {
  EXPECT_EQ(FiniteGroup::cyclic(1)->order(), 1);
  const auto v4 = FiniteGroup::direct_product(z2(), z2());
  EXPECT_EQ(v4->order(), 4);
  for (int a = 0; a < 4; ++a) EXPECT_EQ(v4->mul(a, a), 0);
  const auto z5 = FiniteGroup::cyclic(5);
  for (int a = 0; a < 5; ++a) EXPECT_EQ(z5->mul(a, z5->inv(a)), 0);
  EXPECT_EQ(z2()->label(1), "g");
}

TEST(Groups, RejectsBadTables) {
  // not associative: a Latin square that is not a group
  FiniteGroup::Table bad{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup::from_table(bad), std::exception);
  FiniteGroup::Table no_identity{{1, 0}, {0, 1}};
  EXPECT_THROW(FiniteGroup::from_table(no_identity), std::exception);
}

TEST(Cocycles, ValidationReportsFailures) {
  EXPECT_FALSE(validate_cocycle(TwoCocycle::trivial(z2())));
  // f(a,b) = (-1)^{a_1 b_2} on Z/2 x Z/2 is a normalized cocycle
  const auto v4 = FiniteGroup::direct_product(z2(), z2());
  TwoCocycle f{v4, 2, std::vector<std::vector<int>>(4, std::vector<int>(4))};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) f.exponents[a][b] = (a / 2) * (b % 2);
  EXPECT_FALSE(validate_cocycle(f));
  auto broken = f;
  broken.exponents[2][1] += 1;
  const auto v = validate_cocycle(broken);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, CocycleViolation::Kind::kCocycleIdentity);
  auto unnormalized = f;
  unnormalized.exponents[0][3] = 1;
  ASSERT_TRUE(validate_cocycle(unnormalized));
  EXPECT_EQ(validate_cocycle(unnormalized)->kind, CocycleViolation::Kind::kNormalization);
}

TEST(Algebras, MatrixAlgebrasMatchMatrixUnits) {
  expect_matches_model(matrix_algebra(one(), {0, 0}), oracle::matrix_units(matrix_algebra(one(), {0, 0}), 2));
  const auto m3 = matrix_algebra(FiniteGroup::cyclic(3), {0, 1, 2});
  expect_matches_model(m3, oracle::matrix_units(m3, 3));
  const auto ut3 = upper_triangular(z2(), {0, 1, 1});
  expect_matches_model(ut3, oracle::matrix_units(ut3, 3));
}

TEST(Algebras, ElementaryGradingDegrees) {
  const auto g = FiniteGroup::cyclic(3);
  const std::vector<int> tuple{0, 1, 2};
  const auto a = matrix_algebra(g, tuple);
  for (int b = 0; b < a.dim(); ++b) {
    const auto& l = a.label(b);
    const int i = l[1] - '1', j = l[2] - '1';
    EXPECT_EQ(a.degree(b), g->mul(g->inv(tuple[i]), tuple[j])) << l;
  }
}

TEST(Algebras, GroupAlgebraMatchesRegularRepresentation) {
  const auto v4 = FiniteGroup::direct_product(z2(), z2());
  const auto a = bsz_simple(v4, SubgroupEmbedding::whole(v4), TwoCocycle::trivial(v4), {0});
  expect_matches_model(a, oracle::group_algebra(*v4));
}

TEST(Algebras, TwistedGroupAlgebraAnticommutes) {
  const auto v4 = FiniteGroup::direct_product(z2(), z2());
  TwoCocycle f{v4, 2, std::vector<std::vector<int>>(4, std::vector<int>(4))};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) f.exponents[a][b] = (a / 2) * (b % 2);
  const auto a = bsz_simple(v4, SubgroupEmbedding::whole(v4), f, {0});
  EXPECT_FALSE(validate(a));
  const auto xy = a.multiply(a.basis(2), a.basis(1));
  const auto yx = a.multiply(a.basis(1), a.basis(2));
  auto neg = yx;
  for (auto& c : neg) c = -c;
  EXPECT_EQ(xy, neg);
  EXPECT_FALSE(is_zero_vector(xy));
  // a twisted group algebra of an abelian group with a non-symmetric class is simple
  EXPECT_EQ(radical(a).dim(), 0);
}

TEST(Algebras, GrassmannMatchesIndependentSigns) {
  for (int n : {2, 3, 4}) {
    const auto e = grassmann(n);
    expect_matches_model(e, oracle::grassmann(e));
  }
}

TEST(Algebras, BszConstructionPostconditions) {
  const auto a = matrix_algebra(z2(), {0, 1});
  EXPECT_FALSE(validate(a));
  ASSERT_TRUE(a.unit());
  for (int i = 0; i < a.dim(); ++i)
    if (!(*a.unit())[i].is_zero()) EXPECT_EQ(a.degree(i), 0);
  const auto rad = radical(a);
  EXPECT_EQ(rad.dim(), 0);
  EXPECT_EQ(rad.semisimple_dims, (std::vector<int>{2, 2}));
}

TEST(Algebras, ValidateFindsPerturbedStructureConstants) {
  auto a = upper_triangular(one(), {0, 0});
  EXPECT_FALSE(validate(a));
  // E12 * E22 gets an extra E11 component: breaks associativity
  a.add_product(1, 2, 0, Scalar(1));
  const auto v = validate(a);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, AlgebraViolation::Kind::kAssociativity);

  auto b = matrix_algebra(z2(), {0, 1});
  b.add_product(0, 0, 1, Scalar(1));  // E11*E11 picks up a g-component
  ASSERT_TRUE(validate(b));
  EXPECT_EQ(validate(b)->kind, AlgebraViolation::Kind::kGrading);
}

TEST(Algebras, ProductsAndTensorGradings) {
  const auto m2 = matrix_algebra(one(), {0, 0});
  const auto ut2 = upper_triangular(one(), {0, 0});
  const auto p = direct_product(m2, ut2);
  expect_matches_model(p, oracle::product(oracle::matrix_units(m2, 2), oracle::matrix_units(ut2, 2)));
  EXPECT_EQ(p.label(0), "L.E11");
  const auto t = group_algebra_grading(m2, z2());
  EXPECT_EQ(t.dim(), 8);
  EXPECT_EQ(t.dim_of_degree(1), 4);
  EXPECT_FALSE(validate(t));
}

TEST(Algebras, EnvelopeOfEvenAlgebra) {
  const auto b = matrix_algebra(z2(), {0, 0});  // purely even, no factors
  const auto e = grassmann_envelope(b, 3);
  EXPECT_EQ(e.group()->order(), 1);
  EXPECT_EQ(e.dim(), 4 * 4);  // even part of E(3) has dimension 4
  EXPECT_FALSE(validate(e));
}

TEST(Radical, KnownValues) {
  struct Case {
    GradedAlgebra a;
    int j_dim;
    int nil;
    std::vector<int> d;
  };
  GradedAlgebra n2(one(), {0, 0}, {"u", "v"});
  n2.add_product(0, 0, 1, Scalar(1));
  std::vector<Case> cases{
      {upper_triangular(one(), {0, 0}), 1, 2, {2}},
      {upper_triangular(one(), {0, 0, 0}), 3, 3, {3}},
      {upper_triangular(one(), {0, 0, 0, 0}), 6, 4, {4}},
      {grassmann(4), 15, 5, {1, 0}},
      {matrix_algebra(z2(), {0, 1}), 0, 1, {2, 2}},
      {direct_product(matrix_algebra(one(), {0, 0}), upper_triangular(one(), {0, 0})), 1, 2, {6}},
      {n2, 2, 3, {0}},
  };
  for (const auto& c : cases) {
    const auto rad = radical(c.a);
    EXPECT_EQ(rad.dim(), c.j_dim) << c.a.description;
    EXPECT_EQ(rad.nilpotency_index, c.nil) << c.a.description;
    EXPECT_EQ(rad.semisimple_dims, c.d) << c.a.description;
    expect_radical_sound(c.a);
  }
  EXPECT_EQ(g_par(upper_triangular(one(), {0, 0})), (GPar{{2}, 1}));
}

TEST(Radical, UpperTriangularGradedByZ2) {
  // UT3 with tuple (e, g, g): J has degree components from E12, E13 (g) and E23 (e)
  const auto a = upper_triangular(z2(), {0, 1, 1});
  const auto rad = radical(a);
  EXPECT_EQ(rad.radical_dims, (std::vector<int>{1, 2}));
  EXPECT_EQ(rad.semisimple_dims, (std::vector<int>{3, 0}));
  expect_radical_sound(a);
}

TEST(Radical, BlocksOfProducts) {
  const auto p = direct_product(matrix_algebra(one(), {0, 0}), upper_triangular(one(), {0, 0}));
  const auto blocks = block_decomposition(p);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].size(), 4u);
  EXPECT_EQ(blocks[1].size(), 3u);
  const auto r = restrict_to(p, blocks[1]);
  EXPECT_EQ(radical(r).dim(), 1);
}
