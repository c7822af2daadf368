#include "plg/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace plg {

Trajectory integrate(const PoissonChart& chart, const ScalarField& H, const Vector& x0, double h,
                     long steps) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: step must be positive");
  if (steps < 0) throw std::invalid_argument("integrate: step count must be nonnegative");
  if (x0.size() != chart.dim()) throw std::invalid_argument("integrate: x0 has wrong dimension");
  if (!chart.in_domain(x0)) throw DomainError("integrate: initial point outside the chart", 0);

  long index = 0;
  // Stage derivative: (X_H(x), tr DX_H(x)).
  auto rhs = [&](const Vector& x, Vector& dx) -> double {
    if (!chart.in_domain(x) || !x.allFinite()) {
      std::ostringstream msg;
      msg << "trajectory left the chart domain at step " << index;
      throw DomainError(msg.str(), index);
    }
    const Matrix P = chart.raw(x);
    const Vector g = H.grad(x);
    dx = P.transpose() * g;
    double tr = 0.0;
    for (int j = 0; j < chart.dim(); ++j)
      tr += g.dot(fd::partial4(chart.components(), x, j).col(j));
    return tr;
  };

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.log_jacobian.reserve(steps + 1);
  traj.generator_values.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  traj.log_jacobian.push_back(0.0);
  traj.generator_values.push_back(H(x0));

  Vector x = x0;
  double ell = 0.0;
  Vector k1, k2, k3, k4;
  for (index = 1; index <= steps; ++index) {
    const double l1 = rhs(x, k1);
    const double l2 = rhs(x + 0.5 * h * k1, k2);
    const double l3 = rhs(x + 0.5 * h * k2, k3);
    const double l4 = rhs(x + h * k3, k4);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    ell += (h / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
    if (!chart.in_domain(x) || !x.allFinite()) {
      std::ostringstream msg;
      msg << "trajectory left the chart domain at step " << index;
      throw DomainError(msg.str(), index);
    }
    traj.times.push_back(static_cast<double>(index) * h);
    traj.states.push_back(x);
    traj.log_jacobian.push_back(ell);
    traj.generator_values.push_back(H(x));
  }
  return traj;
}

DriftReport volume_drift(const PoissonChart& chart, const VolumeForm& phi, const Trajectory& traj,
                         const std::vector<ScalarField>& casimirs) {
  DriftReport r;
  if (traj.size() == 0) return r;
  if (traj.states.front().size() != chart.dim())
    throw std::invalid_argument("volume_drift: trajectory does not belong to this chart");
  const double log0 = phi.log(traj.states.front());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    r.volume_drift =
        std::max(r.volume_drift, std::abs(phi.log(traj.states[k]) + traj.log_jacobian[k] - log0));
    r.energy_drift = std::max(
        r.energy_drift, std::abs(traj.generator_values[k] - traj.generator_values.front()));
  }
  for (const auto& c : casimirs) r.casimir_drifts.emplace_back(c.name, integral_drift(traj, c));
  return r;
}

double integral_drift(const Trajectory& traj, const ScalarField& F) {
  if (traj.size() == 0) return 0.0;
  const double v0 = F(traj.states.front());
  double d = 0.0;
  for (const auto& x : traj.states) d = std::max(d, std::abs(F(x) - v0));
  return d;
}

void write_csv(std::ostream& os, const Trajectory& traj, const std::vector<ScalarField>& casimirs,
               long stride) {
  if (stride < 1) throw std::invalid_argument("write_csv: stride must be at least 1");
  const long n = traj.size() ? static_cast<long>(traj.states.front().size()) : 0;
  os << "t";
  for (long i = 1; i <= n; ++i) os << ",x" << i;
  os << ",logjac,H";
  for (const auto& c : casimirs) os << "," << c.name;
  os << "\n";
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  const long last = static_cast<long>(traj.size()) - 1;
  for (long k = 0; k <= last; ++k) {
    if (k % stride != 0 && k != last) continue;
    os << traj.times[k];
    for (long i = 0; i < n; ++i) os << "," << traj.states[k][i];
    os << "," << traj.log_jacobian[k] << "," << traj.generator_values[k];
    for (const auto& c : casimirs) os << "," << c(traj.states[k]);
    os << "\n";
  }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace plg
