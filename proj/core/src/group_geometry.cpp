#include "plg/group_geometry.hpp"

#include <cmath>
#include <sstream>

namespace plg {

GroupModel abelian_group(int dim) {
  GroupModel gm;
  gm.name = "abelian";
  gm.dim = dim;
  gm.multiply = [](const Vector& g, const Vector& h) -> Vector { return g + h; };
  gm.inverse = [](const Vector& g) -> Vector { return -g; };
  gm.identity = Vector::Zero(dim);
  gm.left_jacobian = [dim](const Vector&) -> Matrix { return Matrix::Identity(dim, dim); };
  gm.right_jacobian = gm.left_jacobian;
  return gm;
}

namespace {
void require_domain(const GroupModel& gm, const Vector& g) {
  if (g.size() != gm.dim) throw std::invalid_argument(gm.name + ": point has wrong dimension");
  if (!gm.in_domain(g)) {
    std::ostringstream msg;
    msg << gm.name << ": point (" << g.transpose() << ") is outside the group chart";
    throw DomainError(msg.str());
  }
}
}  // namespace

Matrix translation_jacobian(const GroupModel& gm, const Vector& g, Side side) {
  require_domain(gm, g);
  if (side == Side::Left && gm.left_jacobian) return gm.left_jacobian(g);
  if (side == Side::Right && gm.right_jacobian) return gm.right_jacobian(g);
  VectorFn f;
  if (side == Side::Left)
    f = [&](const Vector& h) { return gm.multiply(g, h); };
  else
    f = [&](const Vector& h) { return gm.multiply(h, g); };
  return fd::jacobian4(f, gm.identity);
}

VectorFn invariant_field(const GroupModel& gm, const Vector& xi, Side side) {
  if (xi.size() != gm.dim) throw std::invalid_argument("invariant_field: wrong algebra dimension");
  const Vector v = gm.algebra_basis() * xi;
  return [gm, v, side](const Vector& g) -> Vector { return translation_jacobian(gm, g, side) * v; };
}

Vector right_invariant_covector(const GroupModel& gm, const Vector& alpha, const Vector& g) {
  const Matrix m = translation_jacobian(gm, g, Side::Right) * gm.algebra_basis();
  return m.transpose().partialPivLu().solve(alpha);
}

Matrix adjoint_matrix(const GroupModel& gm, const Vector& g) {
  require_domain(gm, g);
  if (gm.left_jacobian && gm.right_jacobian) {
    return gm.right_jacobian(g).partialPivLu().solve(gm.left_jacobian(g));
  }
  const Vector ginv = gm.inverse(g);
  VectorFn conj = [&](const Vector& h) { return gm.multiply(gm.multiply(g, h), ginv); };
  return fd::jacobian4(conj, gm.identity);
}

double f0(const GroupModel& gm, const Vector& g) {
  const double d = adjoint_matrix(gm, g).determinant();
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << gm.name << ": det Ad_g = " << d << " is not positive at (" << g.transpose() << ")";
    throw DomainError(msg.str());
  }
  return d;
}

VolumeForm left_volume_density(const GroupModel& gm, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("left_volume_density: scale must be positive");
  auto log_rho = [gm, scale](const Vector& g) {
    const double d = std::abs(translation_jacobian(gm, g, Side::Left).determinant());
    if (d == 0.0) throw DomainError(gm.name + ": degenerate left translation");
    return std::log(scale) - std::log(d);
  };
  return {"left", [log_rho](const Vector& g) { return std::exp(log_rho(g)); }, log_rho, {}};
}

GroupResiduals group_residuals(const GroupModel& gm, const std::vector<Vector>& points) {
  GroupResiduals r;
  const auto& e = gm.identity;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vector& g = points[i];
    r.identity = std::max({r.identity, max_abs(Vector(gm.multiply(g, e) - g)),
                           max_abs(Vector(gm.multiply(e, g) - g))});
    const Vector gi = gm.inverse(g);
    r.inverse = std::max({r.inverse, max_abs(Vector(gm.multiply(g, gi) - e)),
                          max_abs(Vector(gm.multiply(gi, g) - e))});
    if (points.size() >= 3) {
      const Vector& h = points[(i + 1) % points.size()];
      const Vector& k = points[(i + 2) % points.size()];
      const Vector lhs = gm.multiply(gm.multiply(g, h), k);
      const Vector rhs = gm.multiply(g, gm.multiply(h, k));
      r.associativity = std::max(r.associativity, max_abs(Vector(lhs - rhs)));
    }
  }
  return r;
}

}  // namespace plg
