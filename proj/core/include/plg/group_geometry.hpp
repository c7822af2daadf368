#ifndef PLG_GROUP_GEOMETRY_HPP
#define PLG_GROUP_GEOMETRY_HPP

#include "plg/poisson_chart.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plg {

using GroupLaw = std::function<Vector(const Vector&, const Vector&)>;

/// Lie group in a single coordinate chart.
///
/// `basis` holds, column by column, the coordinate components at the identity
/// of the Lie algebra basis used by the accompanying bialgebra. It defaults to
/// the identity matrix. The optional Jacobian hooks return the same matrices as
/// translation_jacobian and replace finite differences when present.
struct GroupModel {
  std::string name;
  int dim = 0;
  GroupLaw multiply;
  VectorFn inverse;
  Vector identity;
  Matrix basis;
  MatrixFn left_jacobian;
  MatrixFn right_jacobian;
  Guard guard;

  bool in_domain(const Vector& g) const { return !guard || guard(g); }
  Matrix algebra_basis() const { return basis.size() ? basis : Matrix::Identity(dim, dim); }
};

/// Abelian group (ℝⁿ, +).
GroupModel abelian_group(int dim);

enum class Side { Left, Right };

/// Left: ∂(g·h)/∂h at h = e. Right: ∂(h·g)/∂h at h = e.
Matrix translation_jacobian(const GroupModel& gm, const Vector& g, Side side);

/// g ↦ translation_jacobian(g)·B·ξ, the invariant field generated by ξ.
VectorFn invariant_field(const GroupModel& gm, const Vector& xi, Side side);

/// Right-invariant 1-form with value α at e, evaluated at g: (J_R B)^{-T} α.
Vector right_invariant_covector(const GroupModel& gm, const Vector& alpha, const Vector& g);

/// Differential at e of h ↦ g h g⁻¹ in coordinate components.
Matrix adjoint_matrix(const GroupModel& gm, const Vector& g);

/// det Ad_g. Throws DomainError when it is not positive.
double f0(const GroupModel& gm, const Vector& g);

/// ρ_l(g) = scale / |det J_L(g)|.
VolumeForm left_volume_density(const GroupModel& gm, double scale = 1.0);

struct GroupResiduals {
  double identity = 0.0;
  double inverse = 0.0;
  double associativity = 0.0;
};

/// Worst group-axiom violations over the sampled points (triples are formed
/// from consecutive points).
GroupResiduals group_residuals(const GroupModel& gm, const std::vector<Vector>& points);

}  // namespace plg

#endif
