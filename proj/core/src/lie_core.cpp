#include "plg/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plg {

StructureConstants::StructureConstants(int dim)
    : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim <= 0) throw std::invalid_argument("structure constants: dimension must be positive");
}

void StructureConstants::set_bracket(int alpha, int beta, const Vector& out) {
  if (out.size() != dim_) throw std::invalid_argument("set_bracket: output has wrong length");
  for (int g = 0; g < dim_; ++g) {
    (*this)(g, alpha, beta) = out[g];
    (*this)(g, beta, alpha) = -out[g];
  }
}

AlgebraResiduals algebra_residuals(const StructureConstants& c) {
  const int n = c.dim();
  AlgebraResiduals r;
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        r.antisymmetry = std::max(r.antisymmetry, std::abs(c(g, a, b) + c(g, b, a)));
  // Σ_μ c^μ_{αβ} c^δ_{μγ} + c^μ_{βγ} c^δ_{μα} + c^μ_{γα} c^δ_{μβ}
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += c(m, a, b) * c(d, m, g) + c(m, b, g) * c(d, m, a) + c(m, g, a) * c(d, m, b);
          r.jacobi = std::max(r.jacobi, std::abs(s));
        }
  return r;
}

LieAlgebra::LieAlgebra(StructureConstants c, std::vector<std::string> labels,
                       AlgebraResiduals residuals)
    : constants_(std::move(c)), labels_(std::move(labels)), residuals_(residuals) {
  if (labels_.empty()) {
    for (int i = 0; i < constants_.dim(); ++i) labels_.push_back("e" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels_.size()) != constants_.dim())
    throw std::invalid_argument("LieAlgebra: label count does not match dimension");
}

Vector LieAlgebra::basis(int i) const {
  Vector v = Vector::Zero(dim());
  v[i] = 1.0;
  return v;
}

LieAlgebra make_algebra(StructureConstants c, std::vector<std::string> labels, double tol) {
  const AlgebraResiduals r = algebra_residuals(c);
  if (r.antisymmetry > tol) {
    std::ostringstream msg;
    msg << "structure constants violate antisymmetry (residual " << r.antisymmetry << ")";
    throw ValidationError(msg.str(), r.antisymmetry);
  }
  if (r.jacobi > tol) {
    std::ostringstream msg;
    msg << "structure constants violate the Jacobi identity (residual " << r.jacobi << ")";
    throw ValidationError(msg.str(), r.jacobi);
  }
  return LieAlgebra(std::move(c), std::move(labels), r);
}

namespace {
void require_dim(const LieAlgebra& A, const Vector& v, const char* what) {
  if (v.size() != A.dim()) {
    std::ostringstream msg;
    msg << what << ": expected length " << A.dim() << ", got " << v.size();
    throw std::invalid_argument(msg.str());
  }
}
}  // namespace

Vector bracket(const LieAlgebra& A, const Vector& xi, const Vector& eta) {
  require_dim(A, xi, "bracket");
  require_dim(A, eta, "bracket");
  const int n = A.dim();
  Vector out = Vector::Zero(n);
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out[g] += A.c(g, a, b) * xi[a] * eta[b];
  return out;
}

Matrix ad_matrix(const LieAlgebra& A, const Vector& xi) {
  require_dim(A, xi, "ad_matrix");
  const int n = A.dim();
  Matrix ad = Matrix::Zero(n, n);
  for (int g = 0; g < n; ++g)
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) ad(g, b) += A.c(g, a, b) * xi[a];
  return ad;
}

ModularCharacter modular_character(const LieAlgebra& A, double tol) {
  const int n = A.dim();
  ModularCharacter m{Vector::Zero(n), true};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m.character[a] += A.c(b, a, b);
  m.is_unimodular = max_abs(m.character) <= tol;
  return m;
}

// ---------------------------------------------------------------------------
// Multivector

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

// Sign of the permutation that sorts `v`; 0 if there is a repeat.
int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

void increasing_tuples(int dim, int k, int start, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < dim; ++i) {
    cur.push_back(i);
    increasing_tuples(dim, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Multivector::Multivector(int dim, int degree)
    : dim_(dim), degree_(degree), data_(ipow(dim, degree), 0.0) {
  if (dim <= 0 || degree < 0) throw std::invalid_argument("Multivector: bad dimension or degree");
}

std::size_t Multivector::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != degree_)
    throw std::invalid_argument("Multivector: index count does not match degree");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("Multivector: index out of range");
    off = off * dim_ + static_cast<std::size_t>(i);
  }
  return off;
}

Multivector Multivector::from_vector(const Vector& v) {
  Multivector m(static_cast<int>(v.size()), 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) m.data_[i] = v[i];
  return m;
}

Multivector Multivector::wedge(int dim, std::initializer_list<int> indices, double coef) {
  Multivector m(dim, static_cast<int>(indices.size()));
  m.add_wedge(coef, std::span<const int>(indices.begin(), indices.size()));
  return m;
}

Multivector Multivector::from_bivector_matrix(const Matrix& mat) {
  const int n = static_cast<int>(mat.rows());
  Multivector m(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.data_[static_cast<std::size_t>(i) * n + j] = mat(i, j);
  return m;
}

void Multivector::add_wedge(double coef, std::span<const int> indices) {
  if (static_cast<int>(indices.size()) != degree_)
    throw std::invalid_argument("add_wedge: index count does not match degree");
  std::vector<int> sorted(indices.begin(), indices.end());
  const int s = sort_sign(sorted);
  if (s == 0 || coef == 0.0) return;
  // Distribute over all orderings of the sorted tuple with permutation signs.
  std::vector<int> perm(sorted.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> idx(sorted.size());
    for (std::size_t i = 0; i < perm.size(); ++i) idx[i] = sorted[perm[i]];
    std::vector<int> tmp(perm);
    const int ps = sort_sign(tmp);
    data_[offset(idx)] += s * ps * coef;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

Vector Multivector::to_vector() const {
  if (degree_ != 1) throw std::invalid_argument("to_vector: degree is not 1");
  return Eigen::Map<const Vector>(data_.data(), dim_);
}

Matrix Multivector::to_matrix() const {
  if (degree_ != 2) throw std::invalid_argument("to_matrix: degree is not 2");
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = data_[static_cast<std::size_t>(i) * dim_ + j];
  return m;
}

std::vector<std::pair<std::vector<int>, double>> Multivector::terms() const {
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur;
  increasing_tuples(dim_, degree_, 0, cur, tuples);
  std::vector<std::pair<std::vector<int>, double>> out;
  for (auto& t : tuples) {
    const double v = at(t);
    if (v != 0.0) out.emplace_back(std::move(t), v);
  }
  return out;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Multivector::antisymmetry_residual() const {
  double r = 0.0;
  std::vector<int> idx(degree_);
  for (std::size_t off = 0; off < data_.size(); ++off) {
    std::size_t rem = off;
    for (int p = degree_ - 1; p >= 0; --p) {
      idx[p] = static_cast<int>(rem % dim_);
      rem /= dim_;
    }
    for (int p = 0; p + 1 < degree_; ++p) {
      std::swap(idx[p], idx[p + 1]);
      r = std::max(r, std::abs(data_[off] + at(idx)));
      std::swap(idx[p], idx[p + 1]);
    }
  }
  return r;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_)
    throw std::invalid_argument("Multivector: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_)
    throw std::invalid_argument("Multivector: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Multivector schouten(const LieAlgebra& A, const Multivector& P, const Multivector& Q) {
  const int n = A.dim();
  const int k = P.degree();
  const int l = Q.degree();
  if (P.dim() != n || Q.dim() != n) throw std::invalid_argument("schouten: dimension mismatch");
  if (k < 1 || l < 1 || k + l - 1 > n)
    throw std::invalid_argument("schouten: degree out of range");

  Multivector out(n, k + l - 1);
  const auto pterms = P.terms();
  const auto qterms = Q.terms();
  std::vector<int> idx(k + l - 1);
  // [X1..Xk, Y1..Yl] = Σ_{i,j} (-1)^{i+j} [Xi,Yj] ∧ X1..^Xi..Xk ∧ Y1..^Yj..Yl
  for (const auto& [I, p] : pterms) {
    for (const auto& [J, q] : qterms) {
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < l; ++j) {
          const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
          std::size_t pos = 1;
          for (int a = 0; a < k; ++a)
            if (a != i) idx[pos++] = I[a];
          for (int b = 0; b < l; ++b)
            if (b != j) idx[pos++] = J[b];
          for (int g = 0; g < n; ++g) {
            const double cg = A.c(g, I[i], J[j]);
            if (cg == 0.0) continue;
            idx[0] = g;
            out.add_wedge(sign * p * q * cg, idx);
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

double param(std::span<const double> params, std::string_view name) {
  if (params.empty())
    throw std::invalid_argument("standard_algebra: '" + std::string(name) + "' needs a parameter");
  return params[0];
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

LieAlgebra standard_algebra(std::string_view name, std::span<const double> params) {
  if (name == "sl2") {
    StructureConstants c(3);
    c.set_bracket(0, 1, vec({0, 2, 0}));
    c.set_bracket(0, 2, vec({0, 0, -2}));
    c.set_bracket(1, 2, vec({1, 0, 0}));
    return make_algebra(std::move(c), {"J3", "J+", "J-"});
  }
  if (name == "gl2") {
    StructureConstants c(4);
    c.set_bracket(0, 1, vec({0, 2, 0, 0}));
    c.set_bracket(0, 2, vec({0, 0, -2, 0}));
    c.set_bracket(1, 2, vec({1, 0, 0, 0}));
    return make_algebra(std::move(c), {"J3", "J+", "J-", "Id/2"});
  }
  if (name == "su2_quaternion") {
    StructureConstants c(3);
    c.set_bracket(0, 1, vec({0, 0, -2}));
    c.set_bracket(0, 2, vec({0, 2, 0}));
    c.set_bracket(1, 2, vec({-2, 0, 0}));
    return make_algebra(std::move(c), {"e2", "e3", "e4"});
  }
  if (name == "quaternion") {
    StructureConstants c(4);
    c.set_bracket(1, 2, vec({0, 0, 0, -2}));
    c.set_bracket(1, 3, vec({0, 0, 2, 0}));
    c.set_bracket(2, 3, vec({0, -2, 0, 0}));
    return make_algebra(std::move(c), {"e1", "e2", "e3", "e4"});
  }
  if (name == "so3") {
    StructureConstants c(3);
    c.set_bracket(0, 1, vec({0, 0, 1}));
    c.set_bracket(1, 2, vec({1, 0, 0}));
    c.set_bracket(2, 0, vec({0, 1, 0}));
    return make_algebra(std::move(c), {"e1", "e2", "e3"});
  }
  if (name == "book") {
    const double eta = param(params, name);
    StructureConstants c(3);
    c.set_bracket(0, 1, vec({0, -eta, 0}));
    c.set_bracket(0, 2, vec({0, 0, -eta}));
    return make_algebra(std::move(c), {"X", "Y", "Z"});
  }
  if (name == "b2xb2") {
    const double eta = param(params, name);
    StructureConstants c(4);
    c.set_bracket(0, 2, vec({eta, 0, 0, 0}));
    c.set_bracket(0, 3, vec({eta, eta, 0, 0}));
    c.set_bracket(1, 2, vec({0, eta, 0, 0}));
    c.set_bracket(1, 3, vec({0.5 * eta, eta, 0, 0}));
    return make_algebra(std::move(c), {"X", "Y", "Z", "W"});
  }
  if (name == "abelian") {
    const int n = static_cast<int>(param(params, name));
    if (n <= 0) throw std::invalid_argument("standard_algebra: abelian dimension must be positive");
    return make_algebra(StructureConstants(n));
  }
  if (name == "affine2d") {
    StructureConstants c(2);
    c.set_bracket(0, 1, vec({0, 1}));
    return make_algebra(std::move(c), {"X", "Y"});
  }
  throw std::invalid_argument("standard_algebra: unknown algebra '" + std::string(name) + "'");
}

}  // namespace plg
