#ifndef PLG_MODULAR_HPP
#define PLG_MODULAR_HPP

#include "plg/bialgebra.hpp"
#include "plg/group_geometry.hpp"
#include "plg/poisson_chart.hpp"

#include <string>
#include <vector>

namespace plg {

/// div_Φ X = Σ_i ∂_i X^i + X(log ρ), fourth-order differences.
double divergence(const PoissonChart& chart, const VectorFn& X, const VolumeForm& phi,
                  const Vector& x);

/// Modular vector field of Π with respect to Φ:
/// 𝓜^i = (1/ρ) Σ_j ∂_j(ρ Π^{ij}), so that ⟨dH, 𝓜⟩ = div_Φ(X_H).
VectorFn modular_field(const PoissonChart& chart, const VolumeForm& phi);

/// e^F Φ
VolumeForm rescale(const VolumeForm& phi, const ScalarField& F);

/// max over points of ‖𝓜_{e^FΦ} − 𝓜_Φ + X_F‖∞.
double conformal_shift_residual(const PoissonChart& chart, const VolumeForm& phi,
                                const ScalarField& F, const std::vector<Vector>& points);

/// Modular field of a left-invariant volume assembled from bialgebra data:
/// ½(𝓜_{𝔤*}^l + 𝓜_{𝔤*}^r + Π♯(𝓜_𝔤^r)).
VectorFn elw_modular_field(const GroupModel& gm, const PoissonChart& chart,
                           const LieBialgebra& B);

/// ½(𝓜_{𝔤*}^l + 𝓜_{𝔤*}^r)
VectorFn symmetric_modular_field(const GroupModel& gm, const LieBialgebra& B);

struct TheoremResidual {
  double max = 0.0;
  Vector point;
};

/// max over points of |X_H(σ − ½ log f₀) + ½(𝓜_{𝔤*}^l + 𝓜_{𝔤*}^r)(H)|.
/// A vanishing residual certifies that e^σ ν^l is preserved by X_H.
TheoremResidual theorem_residual(const GroupModel& gm, const PoissonChart& chart,
                                 const LieBialgebra& B, const ScalarField& H,
                                 const ScalarField& sigma, const std::vector<Vector>& points);

/// (𝓜_{𝔤*}^l + 𝓜_{𝔤*}^r)(H) at g. Must vanish at equilibria of X_H if any
/// volume is preserved.
double singular_condition(const GroupModel& gm, const LieBialgebra& B, const ScalarField& H,
                          const Vector& g);

/// √f₀ · ρ_l
VolumeForm invariant_volume(const GroupModel& gm, double scale = 1.0);

struct MorseReport {
  Vector gradient_at_e;  // algebra basis
  Matrix hessian;        // algebra basis
  Vector eigenvalues;
  bool is_critical = false;
  bool is_morse = false;
  Vector kernel_condition;  // Hess(𝓜_{𝔤*}, ·)
  double kernel_norm = 0.0;
  Vector dual_modular_character;
  bool dual_unimodular = true;
  std::string verdict;
};

inline constexpr const char* kVerdictNoVolume = "no invariant volume exists for this Hamiltonian flow";
inline constexpr const char* kVerdictVolume = "invariant volume exists";
inline constexpr const char* kVerdictNotApplicable = "theorem not applicable";

/// Gradient and Hessian of H at the identity in the algebra basis, with the
/// nondegeneracy test min|λ| > 1e-6·max|λ| and the combined verdict.
MorseReport morse_report(const GroupModel& gm, const ScalarField& H, const LieBialgebra& B,
                         double critical_tol = Tolerances::fd);

}  // namespace plg

#endif
