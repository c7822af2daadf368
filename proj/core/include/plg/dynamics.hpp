#ifndef PLG_DYNAMICS_HPP
#define PLG_DYNAMICS_HPP

#include "plg/poisson_chart.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace plg {

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> log_jacobian;  // ℓ(t) = ∫ tr(DX_H) dt
  std::vector<double> generator_values;

  std::size_t size() const { return times.size(); }
};

struct DriftReport {
  double volume_drift = 0.0;
  double energy_drift = 0.0;
  std::vector<std::pair<std::string, double>> casimir_drifts;
};

/// Classical RK4 on ẋ = X_H(x) together with ℓ̇ = tr(DX_H)(x).
/// Throws DomainError carrying the step index when a stage leaves the chart.
Trajectory integrate(const PoissonChart& chart, const ScalarField& H, const Vector& x0, double h,
                     long steps);

/// volume_drift = max_t |log ρ(x(t)) + ℓ(t) − log ρ(x₀)|; energy and Casimir
/// drifts are max deviations from their initial values.
DriftReport volume_drift(const PoissonChart& chart, const VolumeForm& phi, const Trajectory& traj,
                         const std::vector<ScalarField>& casimirs = {});

/// max_t |F(x(t)) − F(x₀)|
double integral_drift(const Trajectory& traj, const ScalarField& F);

/// Header t,x1..xn,logjac,H,<casimir names>; every `stride`-th row plus the last.
void write_csv(std::ostream& os, const Trajectory& traj,
               const std::vector<ScalarField>& casimirs = {}, long stride = 1);

}  // namespace plg

#endif
