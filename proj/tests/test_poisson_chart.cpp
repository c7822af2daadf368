#include "plg/poisson_chart.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plg;

namespace {

ScalarField coord(int i, int n) {
  return {"x" + std::to_string(i), [i](const Vector& x) { return x[i]; },
          [i, n](const Vector&) -> Vector { return Vector::Unit(n, i); }};
}

ScalarField poly(double a, double b, double c) {
  return {"p", [=](const Vector& x) { return a * x[0] * x[1] + b * x[2] * x[2] * x[0] + c * x[1]; }, {}};
}

// Random homogeneous quadratic bivector on ℝ³.
PoissonChart random_quadratic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> k(18);
  for (auto& v : k) v = u(rng);
  return PoissonChart("random", 3, [k](const Vector& x) {
    const double q[6] = {x[0] * x[0], x[1] * x[1], x[2] * x[2], x[0] * x[1], x[0] * x[2], x[1] * x[2]};
    double p[3] = {0, 0, 0};
    for (int c = 0; c < 3; ++c)
      for (int m = 0; m < 6; ++m) p[c] += k[6 * c + m] * q[m];
    Matrix P = Matrix::Zero(3, 3);
    P(0, 1) = p[0];
    P(0, 2) = p[1];
    P(1, 2) = p[2];
    return Matrix(P - P.transpose());
  });
}

const Vector kPoint = (Vector(3) << 0.3, -0.8, 0.5).finished();

}  // namespace

TEST(PoissonChart, LiePoissonSo3Brackets) {
  const PoissonChart chart = lie_poisson_chart(standard_algebra("so3"));
  EXPECT_NEAR(poisson_bracket(chart, coord(0, 3), coord(1, 3), kPoint), kPoint[2], 1e-15);
  EXPECT_NEAR(poisson_bracket(chart, coord(1, 3), coord(2, 3), kPoint), kPoint[0], 1e-15);
  EXPECT_NEAR(poisson_bracket(chart, coord(2, 3), coord(0, 3), kPoint), kPoint[1], 1e-15);
  EXPECT_LT(jacobi_residual(chart, kPoint), 1e-10);
}

TEST(PoissonChart, SharpConventionGivesXhOfFEqualsBracketHF) {
  const PoissonChart chart = lie_poisson_chart(standard_algebra("so3"));
  const ScalarField H = poly(1.0, 0.5, -2.0);
  const ScalarField F = poly(-0.3, 1.5, 0.7);
  const Vector XH = hamiltonian_field(chart, H)(kPoint);
  EXPECT_NEAR(XH.dot(F.grad(kPoint)), poisson_bracket(chart, H, F, kPoint), 1e-9);
  EXPECT_NEAR(poisson_bracket(chart, H, F, kPoint), -poisson_bracket(chart, F, H, kPoint), 1e-15);
}

TEST(PoissonChart, CasimirOfSo3) {
  const PoissonChart chart = lie_poisson_chart(standard_algebra("so3"));
  const ScalarField C{"norm2", [](const Vector& x) { return x.squaredNorm(); },
                      [](const Vector& x) -> Vector { return 2 * x; }};
  const std::vector<Vector> pts = {kPoint, -kPoint, Vector::Ones(3)};
  EXPECT_LT(casimir_residual(chart, C, pts), 1e-15);
  EXPECT_GT(casimir_residual(chart, poly(1, 0, 0), pts), 0.1);
}

TEST(PoissonChart, RandomQuadraticBivectorsFailJacobi) {
  std::mt19937_64 rng(21);
  int rejected = 0;
  for (int t = 0; t < 20; ++t)
    if (jacobi_residual(random_quadratic(rng), kPoint) > 1e-3) ++rejected;
  EXPECT_EQ(rejected, 20);
}

TEST(PoissonChart, AnyBivectorInTwoDimensionsIsPoisson) {
  const PoissonChart chart("plane", 2, [](const Vector& x) {
    Matrix P(2, 2);
    P << 0, std::sin(x[0]) * x[1], -std::sin(x[0]) * x[1], 0;
    return P;
  });
  EXPECT_LT(jacobi_residual(chart, (Vector(2) << 0.4, 1.1).finished()), 1e-12);
}

TEST(PoissonChart, DivergenceMatchesFiniteDifferenceOfField) {
  const PoissonChart chart("quad", 3, [](const Vector& x) {
    Matrix P = Matrix::Zero(3, 3);
    P(0, 1) = x[2] * x[2];
    P(0, 2) = x[0] * x[1];
    P(1, 2) = std::exp(x[0]);
    return Matrix(P - P.transpose());
  });
  const ScalarField H = poly(0.4, -1.0, 0.3);
  EXPECT_NEAR(hamiltonian_divergence(chart, H, kPoint),
              fd::divergence4(hamiltonian_field(chart, H), kPoint), 1e-8);
}

TEST(PoissonChart, AntisymmetryResidual) {
  const PoissonChart bad("bad", 2, [](const Vector&) {
    Matrix P(2, 2);
    P << 0, 1, 0.5, 0;
    return P;
  });
  EXPECT_DOUBLE_EQ(antisymmetry_residual(bad, Vector::Zero(2)), 1.5);
  EXPECT_DOUBLE_EQ(antisymmetry_residual(lie_poisson_chart(standard_algebra("so3")), kPoint), 0.0);
}

TEST(PoissonChart, GuardThrowsDomainError) {
  const PoissonChart chart("half", 1, [](const Vector&) { return Matrix::Zero(1, 1); },
                           [](const Vector& x) { return x[0] > 0; });
  EXPECT_NO_THROW(chart(Vector::Ones(1)));
  EXPECT_THROW(chart(-Vector::Ones(1)), DomainError);
  EXPECT_FALSE(chart.in_domain(-Vector::Ones(1)));
}

TEST(PoissonChart, PencilOfCompatibleLinearStructures) {
  // Two Lie-Poisson structures from so3 and its rescaling are compatible.
  const PoissonChart a = lie_poisson_chart(standard_algebra("so3"));
  const PoissonChart b("twice", 3, [a](const Vector& x) { return Matrix(2.0 * a.raw(x)); });
  const PoissonChart p = pencil(a, b, 0.25);
  EXPECT_LT((p.raw(kPoint) - 1.75 * a.raw(kPoint)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(jacobi_residual(p, kPoint), 1e-10);
}

TEST(PoissonChart, LebesgueVolume) {
  const VolumeForm v = VolumeForm::lebesgue(3);
  EXPECT_DOUBLE_EQ(v.density(kPoint), 1.0);
  EXPECT_DOUBLE_EQ(v.log(kPoint), 0.0);
  EXPECT_EQ(v.log_gradient(kPoint), Vector::Zero(3));
}
