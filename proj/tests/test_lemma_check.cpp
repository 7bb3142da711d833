#include <gtest/gtest.h>

#include <random>

#include "chordlab/lemma_check.hpp"

using namespace chordlab;

namespace {

GradedSeries poly(const std::map<VarKey, int>& vars, Rational c = 1) {
  GradedSeries f(Truncation{0, 0, std::nullopt});
  f.add_term(Monomial{0, {}, vars}, LaurentCoeff(0, c));
  return f;
}

LemmaPoint point_for(LemmaVariant v, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_lemma_point(v, n, rng);
}

// A polynomial of degree high enough that central differences are not exact.
GradedSeries stiff_polynomial(LemmaVariant v) {
  const Symmetry sym = symmetry_for(lemma_orientation(v));
  switch (lemma_model(v)) {
    case Model::Point:
      return poly({{VarKey::t(3), 1}, {VarKey::t(2), 1}});
    case Model::Length:
      return poly({{VarKey::q(2), 1}, {VarKey::q(1), 1}});
    case Model::LengthAndPoint:
      return poly({{VarKey::u({1, 2}, sym), 1}, {VarKey::u({1}, sym), 1}});
  }
  return poly({});
}

}  // namespace

TEST(MiwaEval, IdentityPointMatrix) {
  const MiwaMatrices mm{Matrix::Identity(4, 4), Matrix::Identity(4, 4)};
  const auto vals = miwa_eval(mm, {VarKey::t(1), VarKey::t(3), VarKey::u({2, 0, 1}, Symmetry::Necklace)});
  for (const auto& [k, v] : vals) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(MiwaEval, ScaledLengthMatrix) {
  const Matrix l = 2 * Matrix::Identity(3, 3);
  const MiwaMatrices mm{Matrix::Zero(3, 3), checked_inverse(l)};
  for (int i = 1; i <= 4; ++i) EXPECT_DOUBLE_EQ(miwa_value(mm, VarKey::q(i)), std::pow(2.0, -i));
}

TEST(MiwaEval, SingularLengthMatrixThrows) {
  Matrix l = Matrix::Identity(3, 3);
  l(2, 2) = 0;
  EXPECT_THROW(checked_inverse(l), std::invalid_argument);
}

TEST(MiwaEval, SymmetricMatricesMakeTuplesReversible) {
  const LemmaVariant v = LemmaVariant::LpNonOriented;
  const LemmaPoint pt = point_for(v, 4, 21);
  const MiwaMatrices mm = lemma_miwa(v, pt);
  const std::vector<int> t{0, 1, 3, 2};
  const VarKey fwd{VarKind::U, t}, back{VarKind::U, {2, 3, 1, 0}};
  EXPECT_NEAR(miwa_value(mm, fwd), miwa_value(mm, back), 1e-12);
}

TEST(FiniteDifference, SecondPowerTrace) {
  const LemmaVariant v = LemmaVariant::PointOriented;
  const LemmaPoint pt = point_for(v, 4, 3);
  const GradedSeries f = poly({{VarKey::t(2), 1}});
  EXPECT_NEAR(fd_contracted_second_derivative(v, f, pt), 1.0, 1e-8);
  EXPECT_NEAR(operator_side(v, f, pt), 1.0, 1e-12);
}

TEST(FiniteDifference, ConstantGivesZero) {
  for (auto v : all_lemma_variants()) {
    const LemmaPoint pt = point_for(v, 3, 5);
    const GradedSeries f = poly({}, 7);
    EXPECT_EQ(fd_contracted_second_derivative(v, f, pt), 0.0);
    EXPECT_EQ(operator_side(v, f, pt), 0.0);
  }
}

TEST(FiniteDifference, SquareOfFirstLpVariable) {
  const LemmaVariant v = LemmaVariant::LpOriented;
  const LemmaPoint pt = point_for(v, 3, 8);
  const GradedSeries f = poly({{VarKey::u({1}, Symmetry::Necklace), 2}});
  const double op = operator_side(v, f, pt);
  EXPECT_LT(relative_error(fd_contracted_second_derivative(v, f, pt), op), 1e-8);
}

TEST(FiniteDifference, CentralErrorIsQuadraticInStep) {
  for (auto v : all_lemma_variants()) {
    const LemmaPoint pt = point_for(v, 3, 13);
    const GradedSeries f = stiff_polynomial(v);
    const double op = operator_side(v, f, pt);
    const double coarse = std::abs(fd_contracted_second_derivative(v, f, pt, 1e-2, FdScheme::Central) - op);
    const double fine = std::abs(fd_contracted_second_derivative(v, f, pt, 5e-3, FdScheme::Central) - op);
    ASSERT_GT(fine, 0.0) << to_string(v);
    EXPECT_NEAR(coarse / fine, 4.0, 0.5) << to_string(v);
  }
}

TEST(CheckLemma, PointOrientedSizeFour) {
  const LemmaReport r = check_lemma(LemmaVariant::PointOriented, 4, 20, 1e-6, 7);
  EXPECT_TRUE(r.pass) << r.max_rel_err;
  EXPECT_EQ(r.trials, 20);
}

TEST(CheckLemma, LpNonOrientedSizeThree) {
  EXPECT_TRUE(check_lemma(LemmaVariant::LpNonOriented, 3, 10, 1e-6, 7).pass);
}

TEST(CheckLemma, EveryVariantPasses) {
  for (auto v : all_lemma_variants()) {
    const LemmaReport r = check_lemma(v, 3, 5, 1e-6, 99);
    EXPECT_TRUE(r.pass) << to_string(v) << " " << r.max_rel_err;
  }
}

TEST(CheckLemma, DeterministicForSeed) {
  const auto a = check_lemma(LemmaVariant::LengthNonOriented, 3, 4, 1e-6, 42);
  const auto b = check_lemma(LemmaVariant::LengthNonOriented, 3, 4, 1e-6, 42);
  EXPECT_EQ(a.max_rel_err, b.max_rel_err);
}

TEST(CheckLemma, Names) {
  for (auto v : all_lemma_variants()) EXPECT_EQ(parse_lemma_variant(to_string(v)), v);
  EXPECT_THROW(parse_lemma_variant("lp-sideways"), std::invalid_argument);
  EXPECT_THROW(check_lemma(LemmaVariant::PointOriented, 1, 1, 1e-6, 0), std::invalid_argument);
}
