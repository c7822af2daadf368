#include "plg/modular.hpp"

#include <cmath>

namespace plg {

double divergence(const PoissonChart& chart, const VectorFn& X, const VolumeForm& phi,
                  const Vector& x) {
  if (!chart.in_domain(x)) throw DomainError(chart.name() + ": point outside the chart domain");
  return fd::divergence4(X, x) + X(x).dot(phi.log_gradient(x));
}

VectorFn modular_field(const PoissonChart& chart, const VolumeForm& phi) {
  return [chart, phi](const Vector& x) -> Vector {
    const Matrix P = chart(x);
    Vector m = P * phi.log_gradient(x);
    for (int j = 0; j < chart.dim(); ++j) m += fd::partial4(chart.components(), x, j).col(j);
    return m;
  };
}

VolumeForm rescale(const VolumeForm& phi, const ScalarField& F) {
  VolumeForm out;
  out.name = "exp(" + F.name + ")*" + phi.name;
  out.log_density = [phi, F](const Vector& x) { return phi.log(x) + F(x); };
  out.density = [ld = out.log_density](const Vector& x) { return std::exp(ld(x)); };
  out.grad_log = [phi, F](const Vector& x) -> Vector { return phi.log_gradient(x) + F.grad(x); };
  return out;
}

double conformal_shift_residual(const PoissonChart& chart, const VolumeForm& phi,
                                const ScalarField& F, const std::vector<Vector>& points) {
  const VectorFn m0 = modular_field(chart, phi);
  const VectorFn m1 = modular_field(chart, rescale(phi, F));
  const VectorFn xf = hamiltonian_field(chart, F);
  double res = 0.0;
  for (const auto& x : points) res = std::max(res, max_abs(Vector(m1(x) - m0(x) + xf(x))));
  return res;
}

namespace {
Vector dual_character(const LieBialgebra& B) { return pl_unimodularity(B).dual_modular_character; }

Vector primal_character(const LieBialgebra& B) {
  return modular_character(B.primal()).character;
}
}  // namespace

VectorFn symmetric_modular_field(const GroupModel& gm, const LieBialgebra& B) {
  const Vector v = gm.algebra_basis() * dual_character(B);
  return [gm, v](const Vector& g) -> Vector {
    return 0.5 * (translation_jacobian(gm, g, Side::Left) * v +
                  translation_jacobian(gm, g, Side::Right) * v);
  };
}

VectorFn elw_modular_field(const GroupModel& gm, const PoissonChart& chart,
                           const LieBialgebra& B) {
  const VectorFn sym = symmetric_modular_field(gm, B);
  const Vector mg = primal_character(B);
  return [gm, chart, sym, mg](const Vector& g) -> Vector {
    return sym(g) + 0.5 * sharp(chart, g, right_invariant_covector(gm, mg, g));
  };
}

double singular_condition(const GroupModel& gm, const LieBialgebra& B, const ScalarField& H,
                          const Vector& g) {
  return 2.0 * H.grad(g).dot(symmetric_modular_field(gm, B)(g));
}

TheoremResidual theorem_residual(const GroupModel& gm, const PoissonChart& chart,
                                 const LieBialgebra& B, const ScalarField& H,
                                 const ScalarField& sigma, const std::vector<Vector>& points) {
  const VectorFn xh = hamiltonian_field(chart, H);
  const VectorFn sym = symmetric_modular_field(gm, B);
  ScalarFn half_log_f0 = [gm](const Vector& g) { return 0.5 * std::log(f0(gm, g)); };
  TheoremResidual out;
  for (const auto& x : points) {
    const Vector dsig = sigma.grad(x) - fd::gradient(half_log_f0, x);
    const double r = std::abs(xh(x).dot(dsig) + H.grad(x).dot(sym(x)));
    if (out.point.size() == 0 || r > out.max) {
      out.max = r;
      out.point = x;
    }
  }
  return out;
}

VolumeForm invariant_volume(const GroupModel& gm, double scale) {
  const VolumeForm left = left_volume_density(gm, scale);
  auto log_rho = [gm, left](const Vector& g) { return left.log(g) + 0.5 * std::log(f0(gm, g)); };
  return {"invariant", [log_rho](const Vector& g) { return std::exp(log_rho(g)); }, log_rho, {}};
}

MorseReport morse_report(const GroupModel& gm, const ScalarField& H, const LieBialgebra& B,
                         double critical_tol) {
  MorseReport r;
  const Matrix basis = gm.algebra_basis();
  const Vector& e = gm.identity;
  r.gradient_at_e = basis.transpose() * H.grad(e);
  Matrix hc = H.gradient ? fd::hessian_from_gradient(H.gradient, e) : fd::hessian(H.value, e);
  r.hessian = basis.transpose() * hc * basis;
  r.hessian = 0.5 * (r.hessian + r.hessian.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(r.hessian, Eigen::EigenvaluesOnly);
  r.eigenvalues = eig.eigenvalues();

  r.is_critical = max_abs(r.gradient_at_e) <= critical_tol;
  const double lmax = r.eigenvalues.cwiseAbs().maxCoeff();
  const double lmin = r.eigenvalues.cwiseAbs().minCoeff();
  r.is_morse = r.is_critical && lmax > 0.0 && lmin > 1e-6 * lmax;

  const UnimodularityVerdict u = pl_unimodularity(B);
  r.dual_modular_character = u.dual_modular_character;
  r.dual_unimodular = u.is_unimodular;
  r.kernel_condition = r.hessian * u.dual_modular_character;
  r.kernel_norm = r.kernel_condition.norm();

  if (r.dual_unimodular)
    r.verdict = kVerdictVolume;
  else if (r.is_morse)
    r.verdict = kVerdictNoVolume;
  else
    r.verdict = kVerdictNotApplicable;
  return r;
}

}  // namespace plg
