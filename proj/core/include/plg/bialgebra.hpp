#ifndef PLG_BIALGEBRA_HPP
#define PLG_BIALGEBRA_HPP

#include "plg/lie_core.hpp"

#include <optional>
#include <tuple>
#include <string_view>
#include <vector>

namespace plg {

/// δ: 𝔤 → Λ²𝔤 stored per generator: delta[α] is the antisymmetric matrix of
/// components of δ(e_α).
class Cobracket {
 public:
  Cobracket() = default;
  Cobracket(LieAlgebra base, std::vector<Matrix> delta);

  const LieAlgebra& base() const { return base_; }
  const std::vector<Matrix>& components() const { return delta_; }
  const Matrix& operator[](int alpha) const { return delta_[alpha]; }
  int dim() const { return base_.dim(); }

  /// δ(ξ) = Σ ξ_α δ(e_α)
  Matrix apply(const Vector& xi) const;

 private:
  LieAlgebra base_;
  std::vector<Matrix> delta_;
};

/// Builds a cobracket from per-generator lists of (i, j, coef) meaning
/// δ(e_α) = Σ coef · e_i ∧ e_j.
Cobracket make_cobracket(const LieAlgebra& A,
                         const std::vector<std::vector<std::tuple<int, int, double>>>& terms);

/// Bivector r = Σ coef · e_i ∧ e_j.
Multivector make_r(int dim, const std::vector<std::tuple<int, int, double>>& terms);

/// δ(e_α) = schouten(e_α, r).
Cobracket cobracket_from_r(const LieAlgebra& A, const Multivector& r);

/// max over basis ξ of max-abs component of schouten(ξ, schouten(r, r)).
double check_gybe(const LieAlgebra& A, const Multivector& r);

/// max over basis pairs of max-abs component of
/// δ([e_α,e_β]) − ad_{e_α}δ(e_β) + ad_{e_β}δ(e_α).
double check_cocycle(const LieAlgebra& A, const Cobracket& delta);

/// Dual algebra with ([e^α, e^β])_γ = δ(e_γ)^{αβ}. Throws ValidationError when
/// the dual bracket fails Jacobi.
LieAlgebra dual_algebra(const Cobracket& delta, double tol = Tolerances::exact);

class LieBialgebra {
 public:
  LieBialgebra() = default;
  LieBialgebra(Cobracket delta, std::optional<Multivector> r = std::nullopt,
               double tol = Tolerances::exact);

  const LieAlgebra& primal() const { return delta_.base(); }
  const LieAlgebra& dual() const { return dual_; }
  const Cobracket& cobracket() const { return delta_; }
  const std::optional<Multivector>& r() const { return r_; }
  double cocycle_residual() const { return cocycle_residual_; }
  double gybe_residual() const { return gybe_residual_; }

 private:
  Cobracket delta_;
  LieAlgebra dual_;
  std::optional<Multivector> r_;
  double cocycle_residual_ = 0.0;
  double gybe_residual_ = 0.0;
};

/// Coboundary bialgebra from an r-matrix.
LieBialgebra bialgebra_from_r(const LieAlgebra& A, const Multivector& r,
                              double tol = Tolerances::exact);

struct UnimodularityVerdict {
  Vector dual_modular_character;  // an element of 𝔤
  bool is_unimodular = true;
};

/// The Poisson-Lie structure is unimodular iff the dual algebra is.
UnimodularityVerdict pl_unimodularity(const LieBialgebra& B, double tol = Tolerances::exact);

/// Parses {"algebra": {...}, "r": [[i,j,c],...]} and/or "delta": [[[i,j,c],...], ...].
/// When both are present they must agree to `tol`.
LieBialgebra parse_bialgebra(std::string_view json_text, double tol = Tolerances::exact);

}  // namespace plg

#endif
