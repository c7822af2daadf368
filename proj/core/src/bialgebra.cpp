#include "plg/bialgebra.hpp"

#include <sstream>
#include <stdexcept>

namespace plg {

Cobracket::Cobracket(LieAlgebra base, std::vector<Matrix> delta)
    : base_(std::move(base)), delta_(std::move(delta)) {
  const int n = base_.dim();
  if (static_cast<int>(delta_.size()) != n)
    throw std::invalid_argument("Cobracket: need one component matrix per generator");
  for (int a = 0; a < n; ++a) {
    if (delta_[a].rows() != n || delta_[a].cols() != n)
      throw std::invalid_argument("Cobracket: component matrix has wrong shape");
    const double asym = max_abs(Matrix(delta_[a] + delta_[a].transpose()));
    if (asym > Tolerances::exact) {
      std::ostringstream msg;
      msg << "Cobracket: delta(" << base_.labels()[a] << ") is not antisymmetric (residual "
          << asym << ")";
      throw ValidationError(msg.str(), asym);
    }
  }
}

Matrix Cobracket::apply(const Vector& xi) const {
  Matrix out = Matrix::Zero(dim(), dim());
  for (int a = 0; a < dim(); ++a) out += xi[a] * delta_[a];
  return out;
}

Cobracket make_cobracket(const LieAlgebra& A,
                         const std::vector<std::vector<std::tuple<int, int, double>>>& terms) {
  const int n = A.dim();
  if (static_cast<int>(terms.size()) != n)
    throw std::invalid_argument("make_cobracket: need one term list per generator");
  std::vector<Matrix> delta(n, Matrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (const auto& [i, j, coef] : terms[a]) {
      delta[a](i, j) += coef;
      delta[a](j, i) -= coef;
    }
  return Cobracket(A, std::move(delta));
}

Multivector make_r(int dim, const std::vector<std::tuple<int, int, double>>& terms) {
  Multivector r(dim, 2);
  for (const auto& [i, j, coef] : terms) {
    const int idx[2] = {i, j};
    r.add_wedge(coef, idx);
  }
  return r;
}

Cobracket cobracket_from_r(const LieAlgebra& A, const Multivector& r) {
  if (r.degree() != 2) throw std::invalid_argument("cobracket_from_r: r must have degree 2");
  std::vector<Matrix> delta;
  delta.reserve(A.dim());
  for (int a = 0; a < A.dim(); ++a) {
    delta.push_back(schouten(A, Multivector::from_vector(A.basis(a)), r).to_matrix());
  }
  return Cobracket(A, std::move(delta));
}

double check_gybe(const LieAlgebra& A, const Multivector& r) {
  if (r.degree() != 2) throw std::invalid_argument("check_gybe: r must have degree 2");
  if (A.dim() < 3) return 0.0;  // Λ³𝔤 = 0
  const Multivector rr = schouten(A, r, r);
  double res = 0.0;
  for (int a = 0; a < A.dim(); ++a) {
    res = std::max(res, schouten(A, Multivector::from_vector(A.basis(a)), rr).max_abs());
  }
  return res;
}

namespace {
// ad_ξ acting on a bivector given as a component matrix: ad M + M adᵀ.
Matrix ad_on_bivector(const LieAlgebra& A, const Vector& xi, const Matrix& m) {
  const Matrix ad = ad_matrix(A, xi);
  return ad * m + m * ad.transpose();
}
}  // namespace

double check_cocycle(const LieAlgebra& A, const Cobracket& delta) {
  const int n = A.dim();
  double res = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vector ea = A.basis(a);
      const Vector eb = A.basis(b);
      const Matrix lhs = delta.apply(bracket(A, ea, eb));
      const Matrix rhs = ad_on_bivector(A, ea, delta[b]) - ad_on_bivector(A, eb, delta[a]);
      res = std::max(res, max_abs(Matrix(lhs - rhs)));
    }
  return res;
}

LieAlgebra dual_algebra(const Cobracket& delta, double tol) {
  const int n = delta.dim();
  StructureConstants c(n);
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) c(g, a, b) = delta[g](a, b);
  std::vector<std::string> labels;
  for (const auto& l : delta.base().labels()) labels.push_back(l + "*");
  try {
    return make_algebra(std::move(c), std::move(labels), tol);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("dual bracket is not a Lie bracket: ") + e.what(),
                          e.residual());
  }
}

LieBialgebra::LieBialgebra(Cobracket delta, std::optional<Multivector> r, double tol)
    : delta_(std::move(delta)), r_(std::move(r)) {
  cocycle_residual_ = check_cocycle(delta_.base(), delta_);
  if (cocycle_residual_ > tol) {
    std::ostringstream msg;
    msg << "cobracket is not a 1-cocycle (residual " << cocycle_residual_ << ")";
    throw ValidationError(msg.str(), cocycle_residual_);
  }
  dual_ = dual_algebra(delta_, tol);
  if (r_) gybe_residual_ = check_gybe(delta_.base(), *r_);
}

LieBialgebra bialgebra_from_r(const LieAlgebra& A, const Multivector& r, double tol) {
  const double gybe = check_gybe(A, r);
  if (gybe > tol) {
    std::ostringstream msg;
    msg << "r does not satisfy the generalized Yang-Baxter equation (residual " << gybe << ")";
    throw ValidationError(msg.str(), gybe);
  }
  return LieBialgebra(cobracket_from_r(A, r), r, tol);
}

UnimodularityVerdict pl_unimodularity(const LieBialgebra& B, double tol) {
  const ModularCharacter m = modular_character(B.dual(), tol);
  return {m.character, m.is_unimodular};
}

}  // namespace plg
