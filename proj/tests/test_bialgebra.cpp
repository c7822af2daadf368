#include "plg/bialgebra.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plg;

namespace {

Multivector random_r(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::tuple<int, int, double>> terms;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) terms.emplace_back(i, j, u(rng));
  return make_r(n, terms);
}

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Bialgebra, CoboundaryIsAlwaysACocycle) {
  std::mt19937_64 rng(11);
  const double eta[] = {0.7};
  for (const char* name : {"sl2", "gl2", "so3", "quaternion"}) {
    const LieAlgebra A = standard_algebra(name);
    for (int t = 0; t < 5; ++t)
      EXPECT_LT(check_cocycle(A, cobracket_from_r(A, random_r(A.dim(), rng))), 1e-13) << name;
  }
  const LieAlgebra book = standard_algebra("book", eta);
  EXPECT_LT(check_cocycle(book, cobracket_from_r(book, random_r(3, rng))), 1e-13);
}

TEST(Bialgebra, EveryBivectorOnSl2SolvesTheModifiedYangBaxterEquation) {
  // Λ³sl2 is one-dimensional and ad-invariant.
  std::mt19937_64 rng(12);
  const LieAlgebra A = standard_algebra("sl2");
  for (int t = 0; t < 5; ++t) EXPECT_LT(check_gybe(A, random_r(3, rng)), 1e-13);
}

TEST(Bialgebra, GybeDetectsNonInvariantSchoutenSquare) {
  const double eta[] = {1.0};
  const LieAlgebra A = standard_algebra("b2xb2", eta);
  EXPECT_LT(check_gybe(A, make_r(4, {{0, 1, 1.0}})), 1e-15);
  EXPECT_GT(check_gybe(A, make_r(4, {{0, 3, 1.0}})), 1.0);
}

TEST(Bialgebra, NonCocycleIsReported) {
  const LieAlgebra A = standard_algebra("sl2");
  // δ(J3) = J+∧J- alone is not a cocycle.
  const Cobracket delta = make_cobracket(A, {{{1, 2, 1.0}}, {}, {}});
  EXPECT_GT(check_cocycle(A, delta), 0.1);
}

TEST(Bialgebra, SklyaninDualCharacter) {
  const LieAlgebra gl2 = standard_algebra("gl2");
  const LieBialgebra B = bialgebra_from_r(gl2, make_r(4, {{2, 1, 1.0}}));
  const UnimodularityVerdict v = pl_unimodularity(B);
  EXPECT_FALSE(v.is_unimodular);
  const Vector expected = (Vector(4) << 2, 0, 0, 0).finished();
  EXPECT_LT((v.dual_modular_character - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Bialgebra, QuaternionDualCharacter) {
  const LieAlgebra A = standard_algebra("quaternion");
  const LieBialgebra B = bialgebra_from_r(A, make_r(4, {{2, 3, -0.5}}));
  const UnimodularityVerdict v = pl_unimodularity(B);
  EXPECT_FALSE(v.is_unimodular);
  const Vector expected = (Vector(4) << 0, -2, 0, 0).finished();
  EXPECT_LT((v.dual_modular_character - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Bialgebra, DualOfLorenzCobracketIsSl2PlusCentre) {
  const double eta[] = {0.3};
  const LieAlgebra A = standard_algebra("b2xb2", eta);
  const Cobracket delta =
      make_cobracket(A, {{{1, 2, 1.0}}, {{0, 2, 0.5}}, {{0, 1, -0.5}}, {{0, 1, -0.5}}});
  EXPECT_LT(check_cocycle(A, delta), 1e-14);
  const LieAlgebra D = dual_algebra(delta);
  const Vector xy = bracket(D, D.basis(0), D.basis(1));
  EXPECT_LT((xy - (Vector(4) << 0, 0, -0.5, -0.5).finished()).norm(), 1e-15);
  EXPECT_LT((bracket(D, D.basis(0), D.basis(2)) - 0.5 * D.basis(1)).norm(), 1e-15);
  EXPECT_LT((bracket(D, D.basis(1), D.basis(2)) - D.basis(0)).norm(), 1e-15);
  for (int a = 0; a < 4; ++a) EXPECT_LT(bracket(D, D.basis(3), D.basis(a)).norm(), 1e-15);
  EXPECT_TRUE(pl_unimodularity(LieBialgebra(delta)).is_unimodular);
}

TEST(Bialgebra, DualCharacterIsModularCharacterOfDual) {
  std::mt19937_64 rng(13);
  const LieAlgebra A = standard_algebra("sl2");
  for (int t = 0; t < 3; ++t) {
    const LieBialgebra B = bialgebra_from_r(A, random_r(3, rng));
    const Vector direct = modular_character(B.dual()).character;
    EXPECT_LT((pl_unimodularity(B).dual_modular_character - direct).norm(), 1e-14);
  }
}

TEST(Bialgebra, DeltaIsLinear) {
  const LieAlgebra A = standard_algebra("gl2");
  const Cobracket d = cobracket_from_r(A, make_r(4, {{2, 1, 1.0}}));
  const Vector xi = (Vector(4) << 0.5, -1.0, 2.0, 3.0).finished();
  Matrix sum = Matrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) sum += xi[a] * d[a];
  EXPECT_LT(max_diff(d.apply(xi), sum), 1e-15);
}

TEST(Bialgebra, ParseAgreesWithCode) {
  const LieBialgebra B = parse_bialgebra(R"({"algebra": "gl2", "r": [["J-", "J+", 1]]})");
  EXPECT_FALSE(pl_unimodularity(B).is_unimodular);
  EXPECT_NEAR(pl_unimodularity(B).dual_modular_character[0], 2.0, 1e-12);
}

TEST(Bialgebra, ParseRejectsMismatchedRAndDelta) {
  const char* text = R"({"algebra": "sl2", "r": [[1, 2, 1]],
                         "delta": [[[1, 2, 5]], [], []]})";
  EXPECT_THROW(parse_bialgebra(text), ValidationError);
}

TEST(Bialgebra, ParseAcceptsConsistentRAndDelta) {
  const LieAlgebra A = standard_algebra("sl2");
  const Cobracket d = cobracket_from_r(A, make_r(3, {{1, 2, 1.0}}));
  std::string delta = "[";
  for (int a = 0; a < 3; ++a) {
    delta += a ? ", [" : "[";
    bool first = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (d[a](i, j) != 0.0) {
          delta += (first ? "" : ", ") + std::string("[") + std::to_string(i) + ", " +
                   std::to_string(j) + ", " + std::to_string(d[a](i, j)) + "]";
          first = false;
        }
    delta += "]";
  }
  delta += "]";
  const std::string text = R"({"algebra": "sl2", "r": [[1, 2, 1]], "delta": )" + delta + "}";
  EXPECT_NO_THROW(parse_bialgebra(text));
}
