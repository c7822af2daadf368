#include "plg/numeric.hpp"

#include <cmath>
#include <limits>

namespace plg {
namespace fd {

namespace {
const double kEps = std::numeric_limits<double>::epsilon();
const double kCbrtEps = std::cbrt(kEps);
const double kFifthRootEps = std::pow(kEps, 0.2);
const double kFourthRootEps = std::pow(kEps, 0.25);
}  // namespace

double step(double v) { return kCbrtEps * (1.0 + std::abs(v)); }

double step4(double v) { return kFifthRootEps * (1.0 + std::abs(v)); }

Vector gradient(const ScalarFn& f, const Vector& x) {
  Vector g(x.size());
  Vector xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = step(x[k]);
    xp[k] = x[k] + h;
    const double fp = f(xp);
    xp[k] = x[k] - h;
    const double fm = f(xp);
    xp[k] = x[k];
    g[k] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Matrix jacobian(const VectorFn& f, const Vector& x) {
  Matrix jac;
  Vector xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = step(x[k]);
    xp[k] = x[k] + h;
    const Vector fp = f(xp);
    xp[k] = x[k] - h;
    const Vector fm = f(xp);
    xp[k] = x[k];
    if (k == 0) jac.resize(fp.size(), x.size());
    jac.col(k) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

Matrix jacobian4(const VectorFn& f, const Vector& x) {
  Matrix jac;
  Vector xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = step4(x[k]);
    xp[k] = x[k] + 2 * h;
    const Vector f2p = f(xp);
    xp[k] = x[k] + h;
    const Vector f1p = f(xp);
    xp[k] = x[k] - h;
    const Vector f1m = f(xp);
    xp[k] = x[k] - 2 * h;
    const Vector f2m = f(xp);
    xp[k] = x[k];
    if (k == 0) jac.resize(f1p.size(), x.size());
    jac.col(k) = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
  }
  return jac;
}

Matrix partial4(const MatrixFn& f, const Vector& x, int k) {
  Vector xp = x;
  const double h = step4(x[k]);
  xp[k] = x[k] + 2 * h;
  const Matrix f2p = f(xp);
  xp[k] = x[k] + h;
  const Matrix f1p = f(xp);
  xp[k] = x[k] - h;
  const Matrix f1m = f(xp);
  xp[k] = x[k] - 2 * h;
  const Matrix f2m = f(xp);
  return (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
}

double divergence4(const VectorFn& f, const Vector& x) {
  double tr = 0.0;
  Vector xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = step4(x[k]);
    xp[k] = x[k] + 2 * h;
    const double f2p = f(xp)[k];
    xp[k] = x[k] + h;
    const double f1p = f(xp)[k];
    xp[k] = x[k] - h;
    const double f1m = f(xp)[k];
    xp[k] = x[k] - 2 * h;
    const double f2m = f(xp)[k];
    xp[k] = x[k];
    tr += (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
  }
  return tr;
}

Matrix hessian(const ScalarFn& f, const Vector& x) {
  const Eigen::Index n = x.size();
  Matrix hess(n, n);
  Vector xp = x;
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = kFourthRootEps * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + hi;
    const double fp = f(xp);
    xp[i] = x[i] - hi;
    const double fm = f(xp);
    xp[i] = x[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double hj = kFourthRootEps * (1.0 + std::abs(x[j]));
      auto eval = [&](double si, double sj) {
        xp[i] = x[i] + si * hi;
        xp[j] = x[j] + sj * hj;
        const double v = f(xp);
        xp[i] = x[i];
        xp[j] = x[j];
        return v;
      };
      const double v = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * hi * hj);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return hess;
}

Matrix hessian_from_gradient(const VectorFn& grad, const Vector& x) {
  const Matrix jac = jacobian4(grad, x);
  return 0.5 * (jac + jac.transpose());
}

}  // namespace fd

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Vector Sampler::uniform(const Vector& lo, const Vector& hi) {
  Vector out(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) out[i] = uniform(lo[i], hi[i]);
  return out;
}

double Sampler::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng_);
}

Vector Sampler::draw(const SampleRegion& region) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vector p = uniform(region.lo, region.hi);
    if (!region.accept || region.accept(p)) return p;
  }
  throw std::runtime_error("sampler: region rejected 10000 consecutive draws");
}

std::vector<Vector> Sampler::draw(const SampleRegion& region, int count) {
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(draw(region));
  return pts;
}

}  // namespace plg
