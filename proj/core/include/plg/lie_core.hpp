#ifndef PLG_LIE_CORE_HPP
#define PLG_LIE_CORE_HPP

#include "plg/numeric.hpp"

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plg {

/// Dense structure constants c(γ, α, β) with [e_α, e_β] = c^γ_{αβ} e_γ.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim);

  int dim() const { return dim_; }
  double& operator()(int gamma, int alpha, int beta) { return data_[index(gamma, alpha, beta)]; }
  double operator()(int gamma, int alpha, int beta) const { return data_[index(gamma, alpha, beta)]; }

  /// Sets [e_α, e_β] = out and [e_β, e_α] = -out.
  void set_bracket(int alpha, int beta, const Vector& out);

 private:
  std::size_t index(int g, int a, int b) const {
    return (static_cast<std::size_t>(g) * dim_ + a) * dim_ + b;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

struct AlgebraResiduals {
  double antisymmetry = 0.0;
  double jacobi = 0.0;
};

AlgebraResiduals algebra_residuals(const StructureConstants& c);

/// A finite-dimensional real Lie algebra given by its structure constants.
/// Immutable once constructed; build through make_algebra to get validation.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(StructureConstants c, std::vector<std::string> labels, AlgebraResiduals residuals);

  int dim() const { return constants_.dim(); }
  const StructureConstants& constants() const { return constants_; }
  double c(int gamma, int alpha, int beta) const { return constants_(gamma, alpha, beta); }
  const std::vector<std::string>& labels() const { return labels_; }
  const AlgebraResiduals& residuals() const { return residuals_; }
  /// Unit coefficient vector of basis element `i`.
  Vector basis(int i) const;

 private:
  StructureConstants constants_;
  std::vector<std::string> labels_;
  AlgebraResiduals residuals_;
};

/// Validates antisymmetry and Jacobi and returns the algebra.
/// Throws ValidationError when either residual exceeds `tol`.
LieAlgebra make_algebra(StructureConstants c, std::vector<std::string> labels = {},
                        double tol = Tolerances::exact);

Vector bracket(const LieAlgebra& A, const Vector& xi, const Vector& eta);

/// (ad_ξ)^γ_β = Σ_α c^γ_{αβ} ξ_α.
Matrix ad_matrix(const LieAlgebra& A, const Vector& xi);

struct ModularCharacter {
  Vector character;  // α-component = Tr(ad_{e_α})
  bool is_unimodular = true;
};

ModularCharacter modular_character(const LieAlgebra& A, double tol = Tolerances::exact);

/// Element of Λ^k of a dim-dimensional space, stored as a full alternating
/// tensor. e_{i1} ∧ ... ∧ e_{ik} has component +1 at (i1, ..., ik).
class Multivector {
 public:
  Multivector() = default;
  Multivector(int dim, int degree);

  static Multivector from_vector(const Vector& v);
  /// coef · e_{i1} ∧ ... ∧ e_{ik}
  static Multivector wedge(int dim, std::initializer_list<int> indices, double coef = 1.0);
  /// Bivector from an antisymmetric matrix of components.
  static Multivector from_bivector_matrix(const Matrix& m);

  int dim() const { return dim_; }
  int degree() const { return degree_; }

  double at(std::span<const int> idx) const { return data_[offset(idx)]; }
  double at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }

  /// Adds coef · e_{i1} ∧ ... ∧ e_{ik}; repeated indices contribute nothing.
  void add_wedge(double coef, std::span<const int> indices);

  /// Components of a degree-1 element.
  Vector to_vector() const;
  /// Components of a degree-2 element as an antisymmetric matrix.
  Matrix to_matrix() const;

  /// Strictly increasing index tuples with their coefficients (nonzero only).
  std::vector<std::pair<std::vector<int>, double>> terms() const;

  double max_abs() const;
  /// Max |P(..i..j..) + P(..j..i..)| over transpositions.
  double antisymmetry_residual() const;

  const std::vector<double>& data() const { return data_; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }

 private:
  std::size_t offset(std::span<const int> idx) const;
  int dim_ = 0;
  int degree_ = 0;
  std::vector<double> data_;
};

/// Algebraic Schouten bracket on Λ𝔤, degree k + l - 1.
/// Throws std::invalid_argument when a degree is < 1 or k + l - 1 > dim.
Multivector schouten(const LieAlgebra& A, const Multivector& P, const Multivector& Q);

/// Registry of the algebras used by the built-in models:
///   sl2            {J3, J+, J-}:  [J3,J+]=2J+, [J3,J-]=-2J-, [J+,J-]=J3
///   gl2            sl2 ⊕ span{Id/2}, Id/2 central
///   su2_quaternion {e2, e3, e4}:  [e2,e3]=-2e4, [e2,e4]=2e3, [e3,e4]=-2e2
///   quaternion     {e1, e2, e3, e4}, e1 central, rest as su2_quaternion
///   so3            [e1,e2]=e3 and cyclic
///   book(η)        [X,Y]=-ηY, [X,Z]=-ηZ
///   b2xb2(η)       [X,Z]=ηX, [X,W]=η(X+Y), [Y,Z]=ηY, [Y,W]=η(X/2+Y)
///   abelian(n)
///   affine2d       [X,Y]=Y
/// Throws std::invalid_argument for unknown names or missing parameters.
LieAlgebra standard_algebra(std::string_view name, std::span<const double> params = {});

/// Parses {"dim": n, "labels": [...], "brackets": [{"a": i, "b": j, "out": [...]}]}.
/// Unlisted pairs are zero and listed pairs are completed antisymmetrically.
LieAlgebra parse_algebra(std::string_view json_text, double tol = Tolerances::exact);

}  // namespace plg

#endif
