#ifndef PLG_POISSON_CHART_HPP
#define PLG_POISSON_CHART_HPP

#include "plg/lie_core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plg {

using Guard = std::function<bool(const Vector&)>;

/// Real function on a chart with an optional analytic gradient.
struct ScalarField {
  std::string name;
  ScalarFn value;
  VectorFn gradient;  // empty: central differences

  double operator()(const Vector& x) const { return value(x); }
  Vector grad(const Vector& x) const;

  static ScalarField constant(double c, std::string name = "const");
};

/// Positive density ρ against coordinate Lebesgue measure.
struct VolumeForm {
  std::string name;
  ScalarFn density;
  ScalarFn log_density;  // empty: log(density)
  VectorFn grad_log;     // empty: fourth-order differences of log_density

  double log(const Vector& x) const;
  Vector log_gradient(const Vector& x) const;

  static VolumeForm lebesgue(int dim);
};

/// Coordinate bivector Π^{ij}(x) on an open domain.
class PoissonChart {
 public:
  PoissonChart() = default;
  PoissonChart(std::string name, int dim, MatrixFn components, Guard guard = {},
               std::vector<std::string> coordinates = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const Guard& guard() const { return guard_; }

  bool in_domain(const Vector& x) const { return !guard_ || guard_(x); }
  /// Π(x); throws DomainError outside the guard.
  Matrix operator()(const Vector& x) const;
  /// Π(x) without the guard check.
  Matrix raw(const Vector& x) const { return components_(x); }
  const MatrixFn& components() const { return components_; }

 private:
  std::string name_;
  int dim_ = 0;
  MatrixFn components_;
  Guard guard_;
  std::vector<std::string> coordinates_;
};

/// (Π♯α)^j = Σ_i α_i Π^{ij}, so that ⟨Π♯α, β⟩ = Π(α, β).
Vector sharp(const PoissonChart& chart, const Vector& x, const Vector& alpha);

/// X_H = Π♯dH. With this convention X_H(F) = {H, F}.
VectorFn hamiltonian_field(const PoissonChart& chart, const ScalarField& H);

/// {F, G}(x) = Π^{ij} ∂_iF ∂_jG
double poisson_bracket(const PoissonChart& chart, const ScalarField& F, const ScalarField& G,
                       const Vector& x);

/// Coordinate divergence Σ_j ∂_j X_H^j = Σ_i ∂_iH Σ_j ∂_jΠ^{ij}. The Hessian
/// term drops out by antisymmetry, so only first derivatives of Π are taken.
double hamiltonian_divergence(const PoissonChart& chart, const ScalarField& H, const Vector& x);

/// max over (i,j,k) of |Σ_l Π^{il}∂_lΠ^{jk} + Π^{jl}∂_lΠ^{ki} + Π^{kl}∂_lΠ^{ij}|.
double jacobi_residual(const PoissonChart& chart, const Vector& x);

/// max |Π(x) + Π(x)ᵀ|
double antisymmetry_residual(const PoissonChart& chart, const Vector& x);

/// max over points of ‖Π♯dC‖∞.
double casimir_residual(const PoissonChart& chart, const ScalarField& C,
                        const std::vector<Vector>& points);

/// Linear structure Π^{αβ}(x) = c^γ_{αβ} x_γ on the dual of A.
PoissonChart lie_poisson_chart(const LieAlgebra& A);

/// λΠ₀ + (1−λ)Π₁ on the intersection of both domains.
PoissonChart pencil(const PoissonChart& chart0, const PoissonChart& chart1, double lambda);

}  // namespace plg

#endif
