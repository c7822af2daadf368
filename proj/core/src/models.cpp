#include "plg/models.hpp"

#include "plg/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace plg {

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Antisymmetric matrix from its strict upper triangle, row by row.
Matrix upper(int n, std::initializer_list<double> entries) {
  Matrix P = Matrix::Zero(n, n);
  auto it = entries.begin();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      P(i, j) = *it++;
      P(j, i) = -P(i, j);
    }
  return P;
}

// (e^{-2ηs} − 1)/η, continuous at η = 0.
double em(double eta, double s) { return eta == 0.0 ? -2.0 * s : std::expm1(-2.0 * eta * s) / eta; }

double sinhc(double u) { return std::abs(u) < 1e-8 ? 1.0 + u * u / 6.0 : std::sinh(u) / u; }

// (cosh ηx − 1)/η² = (x²/2)·sinhc(ηx/2)²
double cosh_m1(double eta, double x) {
  const double s = sinhc(0.5 * eta * x);
  return 0.5 * x * x * s * s;
}

// sinh(ηx)/η
double sinh_over(double eta, double x) { return x * sinhc(eta * x); }

ScalarField field(std::string name, ScalarFn f, VectorFn g) {
  return {std::move(name), std::move(f), std::move(g)};
}

// Point with |x| = amplitude (to one step) on the stable manifold of the Lorenz
// equilibrium (0, 0, z, w), reached by flowing backward from its linearization.
// Generic orbits of the deformed system escape in finite time once η > 1/4.
Vector lorenz_stable_start(const PoissonChart& chart, const ScalarField& H, double eta, double z,
                           double w, double amplitude) {
  const double lambda = std::sqrt(0.5 * (4.0 + em(eta, z + w)));
  const double eps = 1e-7;
  Vector p = vec({eps, lambda * eps, z + 0.5 * eps * eps, w});
  const ScalarField back{"-" + H.name, [H](const Vector& x) { return -H.value(x); },
                         [H](const Vector& x) -> Vector { return -H.grad(x); }};
  for (;;) {
    const Trajectory t = integrate(chart, back, p, 1e-3, 100);
    for (const auto& s : t.states)
      if (std::abs(s[0]) >= amplitude) return s;
    p = t.states.back();
  }
}

}  // namespace

const ScalarField& ModelBundle::hamiltonian(std::string_view name) const {
  for (const auto& h : hamiltonians)
    if (h.name == name) return h;
  std::string known;
  for (const auto& h : hamiltonians) known += (known.empty() ? "" : ", ") + h.name;
  throw std::out_of_range("unknown Hamiltonian '" + std::string(name) + "' for model " + id +
                          " (known: " + known + ")");
}

ModelBundle sl2r_sklyanin() {
  ModelBundle m;
  m.id = "sl2r";
  auto det = [](const Vector& a) { return a[0] * a[3] - a[1] * a[2]; };
  Guard guard = [det](const Vector& a) { return det(a) > 0.0; };
  m.chart = PoissonChart(
      "sklyanin", 4,
      [](const Vector& a) {
        return upper(4, {a[0] * a[1], a[0] * a[2], 2 * a[1] * a[2], 0.0, a[1] * a[3], a[2] * a[3]});
      },
      guard, {"a11", "a12", "a21", "a22"});

  GroupModel g;
  g.name = "GL(2,R)+";
  g.dim = 4;
  g.multiply = [](const Vector& p, const Vector& q) {
    return vec({p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                p[2] * q[1] + p[3] * q[3]});
  };
  g.inverse = [det](const Vector& p) {
    const double d = det(p);
    return vec({p[3] / d, -p[1] / d, -p[2] / d, p[0] / d});
  };
  g.identity = vec({1, 0, 0, 1});
  g.basis = Matrix::Zero(4, 4);
  g.basis.col(0) = vec({1, 0, 0, -1});       // J3
  g.basis.col(1) = vec({0, 1, 0, 0});        // J+
  g.basis.col(2) = vec({0, 0, 1, 0});        // J-
  g.basis.col(3) = vec({0.5, 0, 0, 0.5});    // Id/2
  g.left_jacobian = [](const Vector& p) {
    Matrix J(4, 4);
    J << p[0], 0, p[1], 0,  //
        0, p[0], 0, p[1],   //
        p[2], 0, p[3], 0,   //
        0, p[2], 0, p[3];
    return J;
  };
  g.right_jacobian = [](const Vector& p) {
    Matrix J(4, 4);
    J << p[0], p[2], 0, 0,  //
        p[1], p[3], 0, 0,   //
        0, 0, p[0], p[2],   //
        0, 0, p[1], p[3];
    return J;
  };
  g.guard = guard;
  m.group = g;

  const LieAlgebra gl2 = standard_algebra("gl2");
  m.bialgebra = bialgebra_from_r(gl2, make_r(4, {{2, 1, 1.0}}));

  m.hamiltonians.push_back(field(
      "toda_svd", [](const Vector& a) { return 0.5 * a.squaredNorm(); },
      [](const Vector& a) -> Vector { return a; }));
  m.hamiltonians.push_back(field(
      "toda_shifted",
      [](const Vector& a) { return 0.5 * (a - vec({1, 0, 0, 1})).squaredNorm(); },
      [](const Vector& a) -> Vector { return a - vec({1, 0, 0, 1}); }));
  m.hamiltonians.push_back(field(
      "contrast", [](const Vector& a) { return (vec({1, 0, 0, 1}) - a).squaredNorm(); },
      [](const Vector& a) -> Vector { return 2.0 * (a - vec({1, 0, 0, 1})); }));
  m.casimirs.push_back(field("det", det, [](const Vector& a) { return vec({a[3], -a[2], -a[1], a[0]}); }));

  GroundTruth& t = m.truth;
  t.unimodular = false;
  t.dual_modular_character = vec({2, 0, 0, 0});
  t.f0 = [](const Vector&) { return 1.0; };
  t.invariant_density = [det](const Vector& a) { return 1.0 / (det(a) * det(a)); };
  t.symmetric_modular_field = [](const Vector& a) { return vec({2 * a[0], 0, 0, -2 * a[3]}); };
  t.printed_hamiltonian = "toda_shifted";
  t.printed_sign = 1.0;
  t.printed_field = [](const Vector& a) {
    const double a11 = a[0], a12 = a[1], a21 = a[2], a22 = a[3];
    return vec({-a11 * (a12 * a12 + a21 * a21) - 2 * (a22 - 1) * a12 * a21,
                (a11 - 1) * a11 * a22 - (a22 - 1) * a12 * a22,
                (a11 - 1) * a11 * a12 - (a22 - 1) * a12 * a22,
                2 * (a11 - 1) * a12 * a21 + a22 * (a12 * a12 + a21 * a21)});
  };
  t.singular_hamiltonian = "toda_shifted";
  t.singular_point = [](double a) { return vec({a, 0, 0, 1.0 / a}); };
  t.singular_value = [](double a) { return 4.0 / (a * a) * (a * a - 1) * (a * a - a + 1); };

  m.sampling.lo = vec({0.4, -0.6, -0.6, 0.4});
  m.sampling.hi = vec({1.6, 0.6, 0.6, 1.6});
  m.sampling.accept = [det](const Vector& a) { return det(a) >= 0.2; };
  m.x0 = vec({1.2, 0.1, 0.05, (1.0 + 0.1 * 0.05) / 1.2});
  return m;
}

ModelBundle s3_standard() {
  ModelBundle m;
  m.id = "s3";
  Guard guard = [](const Vector& q) { return q.squaredNorm() > 0.0; };
  m.chart = PoissonChart(
      "standard", 4,
      [](const Vector& q) {
        const double x = q[0], y = q[1], z = q[2], t = q[3];
        return upper(4, {-(z * z + t * t), y * z, y * t, -x * z, -x * t, 0.0});
      },
      guard, {"x", "y", "z", "t"});

  GroupModel g;
  g.name = "H*";
  g.dim = 4;
  g.multiply = [](const Vector& p, const Vector& q) {
    const double x = p[0], y = p[1], z = p[2], t = p[3];
    const double a = q[0], b = q[1], c = q[2], d = q[3];
    return vec({x * a - y * b - z * c - t * d, x * b + y * a - z * d + t * c,
                z * a - t * b + x * c + y * d, z * b + t * a + x * d - y * c});
  };
  g.inverse = [](const Vector& p) {
    const double n2 = p.squaredNorm();
    return vec({p[0] / n2, -p[1] / n2, -p[2] / n2, -p[3] / n2});
  };
  g.identity = vec({1, 0, 0, 0});
  g.left_jacobian = [](const Vector& p) {
    const double x = p[0], y = p[1], z = p[2], t = p[3];
    Matrix J(4, 4);
    J << x, -y, -z, -t,  //
        y, x, t, -z,     //
        z, -t, x, y,     //
        t, z, -y, x;
    return J;
  };
  g.right_jacobian = [](const Vector& p) {
    const double x = p[0], y = p[1], z = p[2], t = p[3];
    Matrix J(4, 4);
    J << x, -y, -z, -t,  //
        y, x, -t, z,     //
        z, t, x, -y,     //
        t, -z, y, x;
    return J;
  };
  g.guard = guard;
  m.group = g;

  m.bialgebra = bialgebra_from_r(standard_algebra("quaternion"), make_r(4, {{2, 3, -0.5}}));

  m.hamiltonians.push_back(field(
      "zt2", [](const Vector& q) { return q[2] * q[2] + q[3] * q[3]; },
      [](const Vector& q) { return vec({0, 0, 2 * q[2], 2 * q[3]}); }));
  m.hamiltonians.push_back(field(
      "zt", [](const Vector& q) { return q[2] * q[3]; },
      [](const Vector& q) { return vec({0, 0, q[3], q[2]}); }));
  m.casimirs.push_back(field(
      "norm2", [](const Vector& q) { return q.squaredNorm(); },
      [](const Vector& q) -> Vector { return 2.0 * q; }));

  GroundTruth& t = m.truth;
  t.unimodular = false;
  t.dual_modular_character = vec({0, -2, 0, 0});
  t.f0 = [](const Vector&) { return 1.0; };
  t.invariant_density = [](const Vector& q) {
    const double n2 = q.squaredNorm();
    return 1.0 / (n2 * n2);
  };
  t.symmetric_modular_field = [](const Vector& q) { return vec({2 * q[1], -2 * q[0], 0, 0}); };

  m.sampling.lo = Vector::Constant(4, -1.5);
  m.sampling.hi = Vector::Constant(4, 1.5);
  m.sampling.accept = [](const Vector& q) { return q.norm() >= 0.3; };
  m.x0 = vec({0.6, 0.5, 0.5, 0.3741657386773941});  // unit quaternion
  return m;
}

ModelBundle lorenz_deformed(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("lorenz: eta must be positive");
  ModelBundle m;
  m.id = "lorenz";
  m.params["eta"] = eta;
  const double r2 = std::sqrt(2.0);
  m.chart = PoissonChart(
      "b2xb2", 4,
      [eta](const Vector& p) {
        const double x = p[0], y = p[1], z = p[2], w = p[3];
        const double pxy = (em(eta, z + w) + eta * (2 * x * x - y * y)) / 4.0;
        return upper(4, {pxy, y / 2, 0.0, x, 0.0, 0.0});
      },
      {}, {"x", "y", "z", "w"});

  GroupModel g;
  g.name = "B2xB2";
  g.dim = 4;
  g.multiply = [eta, r2](const Vector& p, const Vector& q) {
    const double E = std::exp(-eta * (p[2] + p[3]));
    const double C = std::cosh(eta * p[3] / r2), S = std::sinh(eta * p[3] / r2);
    return vec({p[0] + E / 2 * (2 * q[0] * C - r2 * q[1] * S), p[1] + E * (q[1] * C - r2 * q[0] * S),
                p[2] + q[2], p[3] + q[3]});
  };
  g.inverse = [eta, r2](const Vector& p) {
    const double E = std::exp(eta * (p[2] + p[3]));
    const double C = std::cosh(eta * p[3] / r2), S = std::sinh(eta * p[3] / r2);
    return vec({-E * (C * p[0] + S * p[1] / r2), -E * (r2 * S * p[0] + C * p[1]), -p[2], -p[3]});
  };
  g.identity = Vector::Zero(4);
  g.left_jacobian = [eta, r2](const Vector& p) {
    const double E = std::exp(-eta * (p[2] + p[3]));
    const double C = std::cosh(eta * p[3] / r2), S = std::sinh(eta * p[3] / r2);
    Matrix J = Matrix::Identity(4, 4);
    J(0, 0) = E * C;
    J(0, 1) = -r2 / 2 * E * S;
    J(1, 0) = -r2 * E * S;
    J(1, 1) = E * C;
    return J;
  };
  g.right_jacobian = [eta](const Vector& p) {
    const double x = p[0], y = p[1];
    Matrix J = Matrix::Identity(4, 4);
    J(0, 2) = -eta * x;
    J(1, 2) = -eta * y;
    J(0, 3) = -(eta * x + eta * y / 2);
    J(1, 3) = -(eta * x + eta * y);
    return J;
  };
  m.group = g;

  const double e[] = {eta};
  const LieAlgebra A = standard_algebra("b2xb2", e);
  m.bialgebra = LieBialgebra(
      make_cobracket(A, {{{1, 2, 1.0}}, {{0, 2, 0.5}}, {{0, 1, -0.5}}, {{0, 1, -0.5}}}));

  m.hamiltonians.push_back(field(
      "H", [](const Vector& p) { return 2 * (p[2] - p[3]) - p[0] * p[0]; },
      [](const Vector& p) { return vec({-2 * p[0], 0, 2, -2}); }));

  m.casimirs.push_back(field(
      "w", [](const Vector& p) { return p[3]; }, [](const Vector&) { return vec({0, 0, 0, 1}); }));
  m.casimirs.push_back(field(
      "C",
      [eta](const Vector& p) {
        const double x = p[0], y = p[1], z = p[2], w = p[3];
        return std::exp(eta * z) * (x * x - y * y / 2) - std::exp(-eta * w) * cosh_m1(eta, z + w);
      },
      [eta](const Vector& p) {
        const double x = p[0], y = p[1], z = p[2], w = p[3];
        const double ez = std::exp(eta * z), ew = std::exp(-eta * w);
        return vec({2 * x * ez, -y * ez, eta * ez * (x * x - y * y / 2) - ew * sinh_over(eta, z + w),
                    eta * ew * cosh_m1(eta, z + w) - ew * sinh_over(eta, z + w)});
      }));

  GroundTruth& t = m.truth;
  t.unimodular = true;
  t.dual_modular_character = Vector::Zero(4);
  t.f0 = [eta](const Vector& p) { return std::exp(-2 * eta * (p[2] + p[3])); };
  t.invariant_density = [eta](const Vector& p) { return std::exp(eta * (p[2] + p[3])); };
  t.symmetric_modular_field = [](const Vector&) -> Vector { return Vector::Zero(4); };
  t.printed_hamiltonian = "H";
  t.printed_sign = -1.0;
  t.printed_field = [eta](const Vector& p) {
    const double x = p[0], y = p[1], z = p[2], w = p[3];
    return vec({y, x / 2 * (4 + em(eta, z + w) + eta * (2 * x * x - y * y)), x * y, 0});
  };
  t.limit_bivector = [](const Vector& p) {
    return upper(4, {-0.5 * (p[2] + p[3]), p[1] / 2, 0.0, p[0], 0.0, 0.0});
  };
  t.limit_field = [](const Vector& p) {
    const double x = p[0], y = p[1], z = p[2], w = p[3];
    return vec({y, x * (2 - z - w), x * y, 0});
  };

  m.sampling.lo = Vector::Constant(4, -1.0);
  m.sampling.hi = Vector::Constant(4, 1.0);
  m.x0 = lorenz_stable_start(m.chart, m.hamiltonians.front(), eta, 0.3, 0.5, 0.3);
  return m;
}

ModelBundle euler_top_deformed(double eta) {
  ModelBundle m;
  m.id = "eulertop";
  m.primary_structure = "pi0";
  m.params["eta"] = eta;
  const std::vector<std::string> coords = {"x", "y", "z"};
  PoissonChart pi0(
      "pi0", 3,
      [eta](const Vector& p) {
        const double x = p[0], y = p[1], z = p[2];
        return upper(3, {-z, y, 0.5 * (-eta * (y * y + z * z) + em(eta, x))});
      },
      {}, coords);
  PoissonChart pi1(
      "pi1", 3,
      [eta](const Vector& p) {
        const double x = p[0], y = p[1], z = p[2];
        return upper(3, {-y, z, -eta * y * z + em(eta, x)});
      },
      {}, coords);
  m.chart = pi0;

  GroupModel g;
  g.name = "book";
  g.dim = 3;
  g.multiply = [eta](const Vector& p, const Vector& q) {
    const double E = std::exp(-eta * p[0]);
    return vec({p[0] + q[0], p[1] + q[1] * E, p[2] + q[2] * E});
  };
  g.inverse = [eta](const Vector& p) {
    const double E = std::exp(eta * p[0]);
    return vec({-p[0], -p[1] * E, -p[2] * E});
  };
  g.identity = Vector::Zero(3);
  g.left_jacobian = [eta](const Vector& p) {
    const double E = std::exp(-eta * p[0]);
    return Matrix(vec({1, E, E}).asDiagonal());
  };
  g.right_jacobian = [eta](const Vector& p) {
    Matrix J = Matrix::Identity(3, 3);
    J(1, 0) = -eta * p[1];
    J(2, 0) = -eta * p[2];
    return J;
  };
  m.group = g;

  const double e[] = {eta};
  const LieAlgebra A = standard_algebra("book", e);
  m.bialgebra = LieBialgebra(make_cobracket(A, {{{1, 2, -1.0}}, {{0, 2, 1.0}}, {{0, 1, -1.0}}}));
  m.companions.push_back(
      {"pi1", pi1,
       LieBialgebra(make_cobracket(A, {{{1, 2, -2.0}}, {{0, 1, -1.0}}, {{0, 2, 1.0}}}))});

  m.hamiltonians.push_back(field(
      "H0",
      [eta](const Vector& p) {
        return p[1] * p[2] * std::exp(eta * p[0]) + 2 * cosh_m1(eta, p[0]);
      },
      [eta](const Vector& p) {
        const double E = std::exp(eta * p[0]);
        return vec({eta * p[1] * p[2] * E + 2 * sinh_over(eta, p[0]), p[2] * E, p[1] * E});
      }));
  m.hamiltonians.push_back(field(
      "H1",
      [eta](const Vector& p) {
        return -0.5 * (p[1] * p[1] + p[2] * p[2]) * std::exp(eta * p[0]) - cosh_m1(eta, p[0]);
      },
      [eta](const Vector& p) {
        const double E = std::exp(eta * p[0]);
        return vec({-0.5 * eta * (p[1] * p[1] + p[2] * p[2]) * E - sinh_over(eta, p[0]),
                    -p[1] * E, -p[2] * E});
      }));

  GroundTruth& t = m.truth;
  t.unimodular = true;
  t.dual_modular_character = Vector::Zero(3);
  t.f0 = [eta](const Vector& p) { return std::exp(-2 * eta * p[0]); };
  t.invariant_density = [eta](const Vector& p) { return std::exp(eta * p[0]); };
  t.symmetric_modular_field = [](const Vector&) -> Vector { return Vector::Zero(3); };
  t.printed_hamiltonian = "H0";
  t.printed_sign = -1.0;
  t.printed_field = [eta](const Vector& p) {
    const double x = p[0], y = p[1], z = p[2];
    const double E = std::exp(eta * x), s = sinh_over(eta, x);
    return vec({E * (y * y - z * z),
                eta * E * y * z * z - 0.5 * eta * E * y * (y * y + z * z) + s * (2 * z - y),
                -eta * E * y * y * z + 0.5 * eta * E * z * (y * y + z * z) + s * (z - 2 * y)});
  };
  t.limit_bivector = [](const Vector& p) { return upper(3, {-p[2], p[1], -p[0]}); };
  t.limit_field = [](const Vector& p) {
    const double x = p[0], y = p[1], z = p[2];
    return vec({y * y - z * z, x * (2 * z - y), x * (z - 2 * y)});
  };

  m.sampling.lo = Vector::Constant(3, -1.0);
  m.sampling.hi = Vector::Constant(3, 1.0);
  m.x0 = vec({0.3, 0.2, 0.1});
  return m;
}

ScalarField quadratic_hamiltonian(const Matrix& inertia, std::string name) {
  const double asym = max_abs(Matrix(inertia - inertia.transpose()));
  if (asym > Tolerances::exact)
    throw ValidationError("quadratic Hamiltonian: inertia matrix is not symmetric", asym);
  return field(
      std::move(name), [inertia](const Vector& x) { return 0.5 * x.dot(inertia * x); },
      [inertia](const Vector& x) -> Vector { return inertia * x; });
}

ModelBundle lie_poisson_model(const LieAlgebra& A, const Matrix& inertia,
                              std::string algebra_name) {
  const int n = A.dim();
  if (inertia.rows() != n || inertia.cols() != n)
    throw std::invalid_argument("liepoisson: inertia matrix has wrong shape");
  ModelBundle m;
  m.id = "liepoisson";
  m.chart = lie_poisson_chart(A);
  m.group = abelian_group(n);

  // Abelian primal algebra whose cobracket reads the constants of A, so that
  // the dual algebra is A itself.
  std::vector<Matrix> delta(n, Matrix::Zero(n, n));
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) delta[g](a, b) = A.c(g, a, b);
  std::vector<std::string> labels;
  for (const auto& l : A.labels()) labels.push_back(l + "*");
  const double dn[] = {static_cast<double>(n)};
  const LieAlgebra primal(standard_algebra("abelian", dn).constants(), labels, {});
  m.bialgebra = LieBialgebra(Cobracket(primal, std::move(delta)));

  m.hamiltonians.push_back(quadratic_hamiltonian(inertia, "quadratic"));

  const ModularCharacter mc = modular_character(A);
  GroundTruth& t = m.truth;
  t.unimodular = mc.is_unimodular;
  t.dual_modular_character = mc.character;
  t.f0 = [](const Vector&) { return 1.0; };
  t.invariant_density = [](const Vector&) { return 1.0; };
  t.symmetric_modular_field = [c = mc.character](const Vector&) -> Vector { return c; };

  m.sampling.lo = Vector::Constant(n, -1.0);
  m.sampling.hi = Vector::Constant(n, 1.0);
  m.params["dim"] = n;
  m.x0 = Vector::LinSpaced(n, 0.3, 0.1);
  m.primary_structure = algebra_name;
  return m;
}

ModelBundle with_structure(const ModelBundle& bundle, std::string_view name) {
  if (name.empty() || name == bundle.primary_structure) return bundle;
  for (const auto& c : bundle.companions) {
    if (c.name != name) continue;
    ModelBundle out = bundle;
    out.companions.clear();
    out.companions.push_back({bundle.primary_structure, bundle.chart, bundle.bialgebra});
    for (const auto& other : bundle.companions)
      if (other.name != name) out.companions.push_back(other);
    out.chart = c.chart;
    out.bialgebra = c.bialgebra;
    out.primary_structure = c.name;
    out.truth.printed_field = {};
    out.truth.printed_hamiltonian.clear();
    out.truth.limit_bivector = {};
    out.truth.limit_field = {};
    return out;
  }
  throw std::out_of_range("model " + bundle.id + " has no Poisson structure named '" +
                          std::string(name) + "'");
}

LieAlgebra algebra_by_name(std::string_view name) {
  const std::string s(name);
  if (s.rfind("abelian", 0) == 0 && s.size() > 7 && s.find(':') == std::string::npos) {
    const double n[] = {std::stod(s.substr(7))};
    return standard_algebra("abelian", n);
  }
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const double p[] = {std::stod(s.substr(colon + 1))};
    return standard_algebra(s.substr(0, colon), p);
  }
  return standard_algebra(s);
}

std::vector<std::string> builtin_model_ids() { return {"sl2r", "s3", "lorenz", "eulertop", "liepoisson"}; }

ModelBundle builtin_model(std::string_view id, const ModelOptions& options) {
  if (id == "sl2r") return sl2r_sklyanin();
  if (id == "s3") return s3_standard();
  if (id == "lorenz") return lorenz_deformed(options.eta);
  if (id == "eulertop") return euler_top_deformed(options.eta);
  if (id == "liepoisson") {
    const LieAlgebra A = algebra_by_name(options.algebra);
    Matrix I = Matrix::Identity(A.dim(), A.dim());
    if (options.inertia.size() > 0) {
      if (options.inertia.size() != A.dim())
        throw std::invalid_argument("liepoisson: inertia has wrong length");
      I = options.inertia.asDiagonal();
    }
    return lie_poisson_model(A, I, options.algebra);
  }
  throw std::invalid_argument("unknown model '" + std::string(id) + "'");
}

double cobracket_mismatch(const GroupModel& gm, const PoissonChart& chart, const Cobracket& delta) {
  const Matrix B = gm.algebra_basis();
  std::vector<Matrix> d;
  for (int k = 0; k < chart.dim(); ++k) d.push_back(fd::partial4(chart.components(), gm.identity, k));
  double res = 0.0;
  for (int a = 0; a < delta.dim(); ++a) {
    Matrix lhs = Matrix::Zero(chart.dim(), chart.dim());
    for (int k = 0; k < chart.dim(); ++k) lhs += B(k, a) * d[k];
    const Matrix rhs = B * delta[a] * B.transpose();
    res = std::max(res, max_abs(Matrix(lhs - rhs)));
  }
  return res;
}

BundleResiduals bundle_residuals(const ModelBundle& bundle, std::uint64_t seed, int samples) {
  BundleResiduals r;
  Sampler sampler(seed);
  const auto points = sampler.draw(bundle.sampling, samples);

  std::vector<std::pair<const PoissonChart*, const LieBialgebra*>> structures;
  structures.emplace_back(&bundle.chart, bundle.bialgebra ? &*bundle.bialgebra : nullptr);
  for (const auto& c : bundle.companions)
    structures.emplace_back(&c.chart, c.bialgebra ? &*c.bialgebra : nullptr);

  for (const auto& [chart, bialg] : structures) {
    for (const auto& x : points) {
      r.jacobi = std::max(r.jacobi, jacobi_residual(*chart, x));
      r.antisymmetry = std::max(r.antisymmetry, antisymmetry_residual(*chart, x));
    }
    for (const auto& c : bundle.casimirs)
      r.casimir = std::max(r.casimir, casimir_residual(*chart, c, points));
    if (bialg) {
      r.cocycle = std::max(r.cocycle, bialg->cocycle_residual());
      r.gybe = std::max(r.gybe, bialg->gybe_residual());
      if (bundle.group)
        r.cobracket_mismatch =
            std::max(r.cobracket_mismatch, cobracket_mismatch(*bundle.group, *chart, bialg->cobracket()));
    }
  }
  if (bundle.group) r.group = group_residuals(*bundle.group, points);
  return r;
}

BundleResiduals validate_bundle(const ModelBundle& bundle, std::uint64_t seed, int samples) {
  const BundleResiduals r = bundle_residuals(bundle, seed, samples);
  auto check = [&](const char* what, double value, double tol) {
    if (value > tol) {
      std::ostringstream msg;
      msg << bundle.id << ": " << what << " residual " << value << " exceeds " << tol;
      throw ValidationError(msg.str(), value);
    }
  };
  check("antisymmetry", r.antisymmetry, Tolerances::exact);
  check("Jacobi", r.jacobi, Tolerances::fd);
  check("Casimir", r.casimir, 1e-9);
  check("group identity", r.group.identity, 1e-10);
  check("group inverse", r.group.inverse, 1e-8);
  check("group associativity", r.group.associativity, 1e-8);
  check("cobracket (d_e Pi versus delta)", r.cobracket_mismatch, 1e-5);
  check("cocycle", r.cocycle, Tolerances::exact);
  check("generalized Yang-Baxter", r.gybe, Tolerances::exact);
  return r;
}

std::vector<TruthCheck> check_ground_truth(const ModelBundle& bundle, std::uint64_t seed,
                                           int samples) {
  std::vector<TruthCheck> out;
  const GroundTruth& t = bundle.truth;
  Sampler sampler(seed);
  const auto points = sampler.draw(bundle.sampling, samples);

  if (bundle.bialgebra) {
    const UnimodularityVerdict v = pl_unimodularity(*bundle.bialgebra);
    if (t.unimodular) out.push_back({"unimodular", v.is_unimodular == *t.unimodular ? 0.0 : 1.0, 0.0});
    if (t.dual_modular_character.size())
      out.push_back({"dual_modular_character",
                     max_abs(Vector(v.dual_modular_character - t.dual_modular_character)), 1e-10});
  }
  if (bundle.group) {
    const GroupModel& gm = *bundle.group;
    if (t.f0) {
      double rel = 0.0;
      for (const auto& x : points) rel = std::max(rel, std::abs(f0(gm, x) / t.f0(x) - 1.0));
      out.push_back({"f0", rel, 1e-6});
    }
    if (t.invariant_density) {
      const VolumeForm inv = invariant_volume(gm);
      const double ref = inv.density(gm.identity) / t.invariant_density(gm.identity);
      double rel = 0.0;
      for (const auto& x : points)
        rel = std::max(rel, std::abs(inv.density(x) / t.invariant_density(x) / ref - 1.0));
      out.push_back({"invariant_density", rel, 1e-6});
    }
    if (t.symmetric_modular_field && bundle.bialgebra) {
      const VectorFn sym = symmetric_modular_field(gm, *bundle.bialgebra);
      double err = 0.0;
      for (const auto& x : points)
        err = std::max(err, max_abs(Vector(sym(x) - t.symmetric_modular_field(x))));
      out.push_back({"symmetric_modular_field", err, 1e-6});
    }
    if (t.singular_value && bundle.bialgebra) {
      const ScalarField& H = bundle.hamiltonian(t.singular_hamiltonian);
      double err = 0.0;
      for (double a : {0.5, 1.0, 2.0, 3.0})
        err = std::max(err, std::abs(singular_condition(gm, *bundle.bialgebra, H, t.singular_point(a)) -
                                     t.singular_value(a)));
      out.push_back({"singular_condition", err, 1e-6});
    }
  }
  if (t.printed_field && t.printed_sign == -1.0) {
    // Printed equations that are trusted verbatim (up to orientation).
    out.push_back({"printed_field", max_abs(printed_field_discrepancy(bundle, points)), 1e-9});
  }
  return out;
}

Vector printed_field_discrepancy(const ModelBundle& bundle, const std::vector<Vector>& points) {
  const GroundTruth& t = bundle.truth;
  if (!t.printed_field) return Vector();
  const VectorFn xh = hamiltonian_field(bundle.chart, bundle.hamiltonian(t.printed_hamiltonian));
  Vector err = Vector::Zero(bundle.chart.dim());
  for (const auto& x : points)
    err = err.cwiseMax((xh(x) - t.printed_sign * t.printed_field(x)).cwiseAbs());
  return err;
}

ScalarField random_polynomial(int dim, int degree, Sampler& sampler, std::string name) {
  struct Term {
    std::vector<int> powers;
    double coef;
  };
  std::vector<Term> terms;
  std::vector<int> p(dim, 0);
  // Enumerate exponent tuples of total degree 1..degree.
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == dim) {
      if (left < degree) terms.push_back({p, sampler.uniform(-1.0, 1.0)});
      return;
    }
    for (int e = 0; e <= left; ++e) {
      p[k] = e;
      rec(k + 1, left - e);
    }
    p[k] = 0;
  };
  rec(0, degree);
  auto value = [terms](const Vector& x) {
    double s = 0.0;
    for (const auto& t : terms) {
      double m = t.coef;
      for (std::size_t i = 0; i < t.powers.size(); ++i) m *= std::pow(x[i], t.powers[i]);
      s += m;
    }
    return s;
  };
  auto grad = [terms, dim](const Vector& x) {
    Vector g = Vector::Zero(dim);
    for (const auto& t : terms)
      for (int k = 0; k < dim; ++k) {
        if (t.powers[k] == 0) continue;
        double m = t.coef * t.powers[k];
        for (int i = 0; i < dim; ++i) m *= std::pow(x[i], i == k ? t.powers[i] - 1 : t.powers[i]);
        g[k] += m;
      }
    return g;
  };
  return field(std::move(name), value, grad);
}

ModelBundle from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_config_text(ss.str(), path);
}

}  // namespace plg
