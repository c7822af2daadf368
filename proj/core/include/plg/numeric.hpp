#ifndef PLG_NUMERIC_HPP
#define PLG_NUMERIC_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace plg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using ScalarFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;
using MatrixFn = std::function<Matrix(const Vector&)>;

/// Thrown when input data violates an algebraic or geometric axiom.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Thrown when a point lies outside a chart's domain guard.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what, long index = -1)
      : std::runtime_error(what), index_(index) {}
  /// Step index at which a trajectory left the domain, or -1.
  long index() const { return index_; }

 private:
  long index_;
};

/// Default tolerances. Exactly entered data is held to `exact`; anything that
/// goes through finite differences is held to `fd`.
struct Tolerances {
  static constexpr double exact = 1e-12;
  static constexpr double fd = 1e-6;
};

namespace fd {

/// Central-difference step for coordinate value v: cbrt(eps) * (1 + |v|).
double step(double v);
/// Step for the five-point stencil: eps^(1/5) * (1 + |v|).
double step4(double v);

/// Gradient of f by second-order central differences.
Vector gradient(const ScalarFn& f, const Vector& x);
/// Jacobian J(i,j) = d f_i / d x_j by second-order central differences.
Matrix jacobian(const VectorFn& f, const Vector& x);
/// Jacobian by the fourth-order five-point stencil.
Matrix jacobian4(const VectorFn& f, const Vector& x);
/// Directional derivative of a matrix-valued function along coordinate k,
/// fourth-order stencil.
Matrix partial4(const MatrixFn& f, const Vector& x, int k);
/// Trace of the Jacobian of f, fourth-order stencil.
double divergence4(const VectorFn& f, const Vector& x);
/// Symmetrized Hessian from second differences of f.
Matrix hessian(const ScalarFn& f, const Vector& x);
/// Symmetrized Hessian from first differences of an analytic gradient.
Matrix hessian_from_gradient(const VectorFn& grad, const Vector& x);

}  // namespace fd

double max_abs(const Vector& v);
double max_abs(const Matrix& m);

/// Axis-aligned sampling box with a rejection predicate.
struct SampleRegion {
  Vector lo;
  Vector hi;
  std::function<bool(const Vector&)> accept;  // empty: accept everything
};

/// Deterministic point sampler (mt19937_64).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Vector uniform(const Vector& lo, const Vector& hi);
  double uniform(double lo, double hi);
  /// Draws from the region, rejecting points that fail `accept`.
  /// Throws std::runtime_error after too many rejections.
  Vector draw(const SampleRegion& region);
  std::vector<Vector> draw(const SampleRegion& region, int count);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

constexpr std::uint64_t kDefaultSeed = 20240613;

}  // namespace plg

#endif
