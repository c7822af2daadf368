#include "plg/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace plg;

namespace {

double f(const Vector& x) { return std::sin(x[0]) * std::exp(x[1]) + x[0] * x[0] * x[1]; }

Vector grad_f(const Vector& x) {
  Vector g(2);
  g << std::cos(x[0]) * std::exp(x[1]) + 2 * x[0] * x[1], std::sin(x[0]) * std::exp(x[1]) + x[0] * x[0];
  return g;
}

Matrix hess_f(const Vector& x) {
  Matrix h(2, 2);
  h << -std::sin(x[0]) * std::exp(x[1]) + 2 * x[1], std::cos(x[0]) * std::exp(x[1]) + 2 * x[0],
      std::cos(x[0]) * std::exp(x[1]) + 2 * x[0], std::sin(x[0]) * std::exp(x[1]);
  return h;
}

}  // namespace

TEST(Numeric, GradientAgainstAnalytic) {
  const Vector x = (Vector(2) << 0.4, -0.3).finished();
  EXPECT_LT((fd::gradient(f, x) - grad_f(x)).norm(), 1e-9);
}

TEST(Numeric, FourthOrderJacobianIsTighter) {
  const Vector x = (Vector(2) << 0.4, -0.3).finished();
  const Matrix j4 = fd::jacobian4(grad_f, x);
  const Matrix j2 = fd::jacobian(grad_f, x);
  EXPECT_LT((j4 - hess_f(x)).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LT((j2 - hess_f(x)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Numeric, Hessians) {
  const Vector x = (Vector(2) << -0.8, 0.5).finished();
  EXPECT_LT((fd::hessian(f, x) - hess_f(x)).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT((fd::hessian_from_gradient(grad_f, x) - hess_f(x)).cwiseAbs().maxCoeff(), 1e-8);
  const Matrix h = fd::hessian(f, x);
  EXPECT_DOUBLE_EQ(h(0, 1), h(1, 0));
}

TEST(Numeric, Divergence) {
  const VectorFn v = [](const Vector& x) {
    return (Vector(3) << x[0] * x[1], std::sin(x[1]), x[2] * x[2] * x[0]).finished();
  };
  const Vector x = (Vector(3) << 0.3, 0.2, -0.7).finished();
  EXPECT_NEAR(fd::divergence4(v, x), x[1] + std::cos(x[1]) + 2 * x[2] * x[0], 1e-11);
}

TEST(Numeric, Partial4OfMatrixFunction) {
  const MatrixFn m = [](const Vector& x) {
    Matrix a(2, 2);
    a << x[0] * x[1], std::exp(x[0]), 0.0, x[1] * x[1];
    return a;
  };
  const Vector x = (Vector(2) << 0.1, 0.9).finished();
  const Matrix d0 = fd::partial4(m, x, 0);
  EXPECT_NEAR(d0(0, 0), 0.9, 1e-11);
  EXPECT_NEAR(d0(0, 1), std::exp(0.1), 1e-11);
  EXPECT_NEAR(fd::partial4(m, x, 1)(1, 1), 1.8, 1e-11);
}

TEST(Numeric, SamplerIsDeterministicAndRespectsRegion) {
  SampleRegion r{Vector::Constant(3, -1.0), Vector::Constant(3, 1.0),
                 [](const Vector& x) { return x.norm() > 0.5; }};
  Sampler a(7), b(7);
  const auto pa = a.draw(r, 50);
  const auto pb = b.draw(r, 50);
  ASSERT_EQ(pa.size(), 50u);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    EXPECT_EQ(pa[i], pb[i]);
    EXPECT_GT(pa[i].norm(), 0.5);
    EXPECT_LE(pa[i].cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(Numeric, SamplerGivesUpOnEmptyRegion) {
  SampleRegion r{Vector::Constant(2, 0.0), Vector::Constant(2, 1.0),
                 [](const Vector&) { return false; }};
  Sampler s(1);
  EXPECT_THROW(s.draw(r), std::runtime_error);
}

TEST(Numeric, MaxAbs) {
  EXPECT_DOUBLE_EQ(max_abs((Vector(3) << 1, -4, 2).finished()), 4.0);
  EXPECT_DOUBLE_EQ(max_abs(Vector()), 0.0);
}
