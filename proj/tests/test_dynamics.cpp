#include "plg/dynamics.hpp"
#include "plg/modular.hpp"
#include "plg/models.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace plg;

TEST(Dynamics, ConstantHamiltonianIsStationary) {
  const ModelBundle m = builtin_model("eulertop");
  const Trajectory t = integrate(m.chart, ScalarField::constant(2.0), m.x0, 0.01, 50);
  ASSERT_EQ(t.size(), 51u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t.states[i], m.x0);
    EXPECT_EQ(t.log_jacobian[i], 0.0);
  }
  const DriftReport d = volume_drift(m.chart, VolumeForm::lebesgue(3), t);
  EXPECT_EQ(d.volume_drift, 0.0);
  EXPECT_EQ(d.energy_drift, 0.0);
}

TEST(Dynamics, ZeroStepsGiveTrivialReport) {
  const ModelBundle m = builtin_model("sl2r");
  const Trajectory t = integrate(m.chart, m.hamiltonians.front(), m.x0, 1e-3, 0);
  ASSERT_EQ(t.size(), 1u);
  const DriftReport d = volume_drift(m.chart, invariant_volume(*m.group), t, m.casimirs);
  EXPECT_EQ(d.volume_drift, 0.0);
  EXPECT_EQ(d.energy_drift, 0.0);
  for (const auto& [name, v] : d.casimir_drifts) EXPECT_EQ(v, 0.0) << name;
}

TEST(Dynamics, TimesAreUniformAndIncreasing) {
  const ModelBundle m = builtin_model("eulertop");
  const Trajectory t = integrate(m.chart, m.hamiltonians.front(), m.x0, 0.01, 100);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_NEAR(t.times[i] - t.times[i - 1], 0.01, 1e-15);
  EXPECT_NEAR(t.times.back(), 1.0, 1e-12);
}

TEST(Dynamics, MatchesAnalyticSolutionOfLinearFlow) {
  // so3 with H = x3²/2 rotates (x1, x2) at angular speed x3.
  const PoissonChart chart = lie_poisson_chart(standard_algebra("so3"));
  const ScalarField H{"spin", [](const Vector& x) { return 0.5 * x[2] * x[2]; },
                      [](const Vector& x) -> Vector { return (Vector(3) << 0, 0, x[2]).finished(); }};
  const Vector x0 = (Vector(3) << 1.0, 0.0, 2.0).finished();
  const Trajectory t = integrate(chart, H, x0, 1e-3, 1000);
  const Vector& x = t.states.back();
  EXPECT_NEAR(x.head(2).norm(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(std::atan2(x[1], x[0])), 2.0, 1e-10);
  EXPECT_NEAR(x[2], 2.0, 1e-15);
}

TEST(Dynamics, EnergyAndCasimirsAreConserved) {
  for (const char* id : {"sl2r", "s3", "eulertop", "lorenz"}) {
    const ModelBundle m = builtin_model(id);
    const Trajectory t = integrate(m.chart, m.hamiltonians.front(), m.x0, 1e-3, 5000);
    const DriftReport d = volume_drift(m.chart, VolumeForm::lebesgue(m.chart.dim()), t, m.casimirs);
    EXPECT_LT(d.energy_drift, 1e-8) << id;
    for (const auto& [name, v] : d.casimir_drifts) EXPECT_LT(v, 1e-8) << id << " " << name;
  }
}

TEST(Dynamics, LorenzSpecStartEscapesInFiniteTime) {
  const ModelBundle m = builtin_model("lorenz");
  const Vector x0 = (Vector(4) << 0.1, 0.2, 0.3, 0.5).finished();
  try {
    integrate(m.chart, m.hamiltonians.front(), x0, 1e-3, 10000);
    ADD_FAILURE() << "expected a domain exit";
  } catch (const DomainError& e) {
    EXPECT_GT(e.index(), 5800);
    EXPECT_LT(e.index(), 7000);
  }
  // Before the escape the generator is conserved.
  const Trajectory t = integrate(m.chart, m.hamiltonians.front(), x0, 1e-3, 4000);
  EXPECT_LT(integral_drift(t, m.hamiltonians.front()), 1e-8);
}

TEST(Dynamics, LorenzDefaultStartStaysBounded) {
  const ModelBundle m = builtin_model("lorenz");
  const Trajectory t = integrate(m.chart, m.hamiltonians.front(), m.x0, 1e-3, 10000);
  double biggest = 0.0;
  for (const auto& x : t.states) biggest = std::max(biggest, x.cwiseAbs().maxCoeff());
  EXPECT_LT(biggest, 1.0);
  EXPECT_LT(integral_drift(t, m.hamiltonians.front()), 1e-8);
}

TEST(Dynamics, EulerTopSecondHamiltonianConserved) {
  const ModelBundle m = builtin_model("eulertop");
  const Trajectory t = integrate(m.chart, m.hamiltonian("H0"), m.x0, 1e-3, 10000);
  EXPECT_LT(integral_drift(t, m.hamiltonian("H1")), 1e-7);
}

TEST(Dynamics, InvariantVolumeBeatsLebesgue) {
  const ModelBundle m = builtin_model("eulertop");
  const Trajectory t = integrate(m.chart, m.hamiltonian("H0"), m.x0, 1e-3, 10000);
  EXPECT_LT(volume_drift(m.chart, invariant_volume(*m.group), t).volume_drift, 1e-6);
  EXPECT_GT(volume_drift(m.chart, VolumeForm::lebesgue(3), t).volume_drift, 1e-3);
}

TEST(Dynamics, GuardViolationReportsStep) {
  const PoissonChart plane("plane", 2, [](const Vector&) {
    Matrix P(2, 2);
    P << 0, 1, -1, 0;
    return P;
  }, [](const Vector& x) { return x[0] < 0.5; });
  // ẋ = 1
  const ScalarField H{"-y", [](const Vector& x) { return -x[1]; },
                      [](const Vector&) -> Vector { return (Vector(2) << 0, -1).finished(); }};
  try {
    integrate(plane, H, Vector::Zero(2), 0.1, 20);
    ADD_FAILURE() << "expected a domain exit";
  } catch (const DomainError& e) {
    EXPECT_GE(e.index(), 4);
    EXPECT_LE(e.index(), 6);
  }
}

TEST(Dynamics, CsvLayout) {
  const ModelBundle m = builtin_model("sl2r");
  const Trajectory t = integrate(m.chart, m.hamiltonians.front(), m.x0, 1e-2, 10);
  std::ostringstream os;
  write_csv(os, t, m.casimirs, 4);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,x1,x2,x3,x4,logjac,H,det");
  int rows = 0;
  std::string last;
  while (std::getline(is, line)) {
    ++rows;
    last = line;
  }
  EXPECT_EQ(rows, 4);  // steps 0, 4, 8 and the final step 10
  EXPECT_EQ(last.substr(0, last.find(',')), "0.10000000000000001");
}
