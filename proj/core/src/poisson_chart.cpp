#include "plg/poisson_chart.hpp"

#include <cmath>
#include <sstream>

namespace plg {

Vector ScalarField::grad(const Vector& x) const {
  if (gradient) return gradient(x);
  return fd::gradient(value, x);
}

ScalarField ScalarField::constant(double c, std::string name) {
  return {std::move(name), [c](const Vector&) { return c; },
          [](const Vector& x) -> Vector { return Vector::Zero(x.size()); }};
}

double VolumeForm::log(const Vector& x) const {
  if (log_density) return log_density(x);
  return std::log(density(x));
}

Vector VolumeForm::log_gradient(const Vector& x) const {
  if (grad_log) return grad_log(x);
  ScalarFn f = [this](const Vector& p) { return log(p); };
  VectorFn wrapped = [&f](const Vector& p) {
    Vector v(1);
    v[0] = f(p);
    return v;
  };
  return fd::jacobian4(wrapped, x).row(0).transpose();
}

VolumeForm VolumeForm::lebesgue(int dim) {
  return {"lebesgue", [](const Vector&) { return 1.0; }, [](const Vector&) { return 0.0; },
          [dim](const Vector&) -> Vector { return Vector::Zero(dim); }};
}

PoissonChart::PoissonChart(std::string name, int dim, MatrixFn components, Guard guard,
                           std::vector<std::string> coordinates)
    : name_(std::move(name)),
      dim_(dim),
      components_(std::move(components)),
      guard_(std::move(guard)),
      coordinates_(std::move(coordinates)) {
  if (dim_ <= 0) throw std::invalid_argument("PoissonChart: dimension must be positive");
  if (coordinates_.empty())
    for (int i = 0; i < dim_; ++i) coordinates_.push_back("x" + std::to_string(i + 1));
  if (static_cast<int>(coordinates_.size()) != dim_)
    throw std::invalid_argument("PoissonChart: coordinate names do not match dimension");
}

Matrix PoissonChart::operator()(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("PoissonChart: point has wrong dimension");
  if (!in_domain(x)) {
    std::ostringstream msg;
    msg << name_ << ": point (" << x.transpose() << ") is outside the chart domain";
    throw DomainError(msg.str());
  }
  return components_(x);
}

Vector sharp(const PoissonChart& chart, const Vector& x, const Vector& alpha) {
  if (alpha.size() != chart.dim()) throw std::invalid_argument("sharp: covector has wrong length");
  return chart(x).transpose() * alpha;
}

VectorFn hamiltonian_field(const PoissonChart& chart, const ScalarField& H) {
  return [chart, H](const Vector& x) -> Vector { return chart(x).transpose() * H.grad(x); };
}

double poisson_bracket(const PoissonChart& chart, const ScalarField& F, const ScalarField& G,
                       const Vector& x) {
  return F.grad(x).dot(chart(x) * G.grad(x));
}

namespace {
// d[l] = ∂_l Π at x.
std::vector<Matrix> bivector_partials(const PoissonChart& chart, const Vector& x) {
  std::vector<Matrix> d;
  d.reserve(chart.dim());
  for (int l = 0; l < chart.dim(); ++l) d.push_back(fd::partial4(chart.components(), x, l));
  return d;
}
}  // namespace

double hamiltonian_divergence(const PoissonChart& chart, const ScalarField& H, const Vector& x) {
  if (!chart.in_domain(x)) throw DomainError(chart.name() + ": point outside the chart domain");
  const Vector g = H.grad(x);
  double tr = 0.0;
  for (int j = 0; j < chart.dim(); ++j) {
    const Matrix dj = fd::partial4(chart.components(), x, j);
    tr += g.dot(dj.col(j));
  }
  return tr;
}

double jacobi_residual(const PoissonChart& chart, const Vector& x) {
  const Matrix P = chart(x);
  const auto d = bivector_partials(chart, x);
  const int n = chart.dim();
  auto term = [&](int i, int j, int k) {
    double s = 0.0;
    for (int l = 0; l < n; ++l) s += P(i, l) * d[l](j, k);
    return s;
  };
  double res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        res = std::max(res, std::abs(term(i, j, k) + term(j, k, i) + term(k, i, j)));
  return res;
}

double antisymmetry_residual(const PoissonChart& chart, const Vector& x) {
  const Matrix P = chart(x);
  return max_abs(Matrix(P + P.transpose()));
}

double casimir_residual(const PoissonChart& chart, const ScalarField& C,
                        const std::vector<Vector>& points) {
  double res = 0.0;
  for (const auto& x : points) res = std::max(res, max_abs(sharp(chart, x, C.grad(x))));
  return res;
}

PoissonChart lie_poisson_chart(const LieAlgebra& A) {
  const int n = A.dim();
  MatrixFn comp = [A, n](const Vector& x) {
    Matrix P = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) P(a, b) += A.c(g, a, b) * x[g];
    return P;
  };
  return PoissonChart("lie-poisson", n, std::move(comp), {}, A.labels());
}

PoissonChart pencil(const PoissonChart& chart0, const PoissonChart& chart1, double lambda) {
  if (chart0.dim() != chart1.dim()) throw std::invalid_argument("pencil: dimension mismatch");
  MatrixFn comp = [c0 = chart0.components(), c1 = chart1.components(), lambda](const Vector& x) {
    if (lambda == 1.0) return c0(x);
    if (lambda == 0.0) return c1(x);
    return Matrix(lambda * c0(x) + (1.0 - lambda) * c1(x));
  };
  Guard guard;
  if (chart0.guard() || chart1.guard())
    guard = [g0 = chart0.guard(), g1 = chart1.guard()](const Vector& x) {
      return (!g0 || g0(x)) && (!g1 || g1(x));
    };
  std::ostringstream name;
  name << "pencil(" << chart0.name() << "," << chart1.name() << "," << lambda << ")";
  return PoissonChart(name.str(), chart0.dim(), std::move(comp), std::move(guard),
                      chart0.coordinates());
}

}  // namespace plg
