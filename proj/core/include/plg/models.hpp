#ifndef PLG_MODELS_HPP
#define PLG_MODELS_HPP

#include "plg/bialgebra.hpp"
#include "plg/group_geometry.hpp"
#include "plg/modular.hpp"
#include "plg/poisson_chart.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plg {

/// A second Poisson structure on the same group (bi-Hamiltonian models).
struct Companion {
  std::string name;
  PoissonChart chart;
  std::optional<LieBialgebra> bialgebra;
};

/// Closed-form facts about a model. Empty callables mean "not known".
struct GroundTruth {
  std::optional<bool> unimodular;
  Vector dual_modular_character;  // algebra basis; empty if unknown
  ScalarFn f0;
  ScalarFn invariant_density;  // normalized to 1 at the identity
  VectorFn symmetric_modular_field;

  /// Equations of motion as printed for `printed_hamiltonian`; the Hamiltonian
  /// field equals printed_sign times this.
  std::string printed_hamiltonian;
  VectorFn printed_field;
  double printed_sign = 1.0;

  /// Linear structure obtained as the deformation parameter goes to zero.
  MatrixFn limit_bivector;
  /// Equations of motion of the limit system for `printed_hamiltonian`,
  /// again up to printed_sign.
  VectorFn limit_field;

  /// Singular-point condition along a one-parameter family of equilibria.
  std::string singular_hamiltonian;
  std::function<Vector(double)> singular_point;
  std::function<double(double)> singular_value;
};

struct ModelBundle {
  std::string id;
  std::string primary_structure = "pi";
  std::optional<GroupModel> group;
  PoissonChart chart;
  std::optional<LieBialgebra> bialgebra;
  std::vector<Companion> companions;
  std::vector<ScalarField> hamiltonians;
  std::vector<ScalarField> casimirs;
  GroundTruth truth;
  SampleRegion sampling;
  Vector x0;  // default initial condition for simulations
  std::map<std::string, double> params;

  /// Throws std::out_of_range with the list of known names.
  const ScalarField& hamiltonian(std::string_view name) const;
};

ModelBundle sl2r_sklyanin();
ModelBundle s3_standard();
ModelBundle lorenz_deformed(double eta);
ModelBundle euler_top_deformed(double eta);
ModelBundle lie_poisson_model(const LieAlgebra& A, const Matrix& inertia,
                              std::string algebra_name = "custom");

/// The same bundle with a companion structure promoted to the primary chart.
ModelBundle with_structure(const ModelBundle& bundle, std::string_view name);

struct ModelOptions {
  double eta = 0.3;
  std::string algebra = "so3";
  Vector inertia;  // diagonal of I; empty: identity
};

/// Built-in ids: sl2r, s3, lorenz, eulertop, liepoisson.
ModelBundle builtin_model(std::string_view id, const ModelOptions& options = {});
std::vector<std::string> builtin_model_ids();

/// Algebra names accepted by the liepoisson model: the standard_algebra
/// registry plus abelianN shorthands (abelian3) and parameterized forms
/// such as book:0.5.
LieAlgebra algebra_by_name(std::string_view name);

/// Loads a JSON model description. Throws ConfigError on malformed input and
/// ValidationError when the resulting bundle fails its invariants.
ModelBundle from_config(const std::string& path);
ModelBundle from_config_text(std::string_view text, const std::string& source = "<config>");

/// Parse failure in a configuration file, with 1-based line and column when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct BundleResiduals {
  double jacobi = 0.0;
  double antisymmetry = 0.0;
  double casimir = 0.0;
  GroupResiduals group;
  double cobracket_mismatch = 0.0;  // d_eΠ versus the declared δ
  double cocycle = 0.0;
  double gybe = 0.0;
};

/// Residuals of every structure in the bundle (primary and companions, worst
/// case) at `samples` points drawn with `seed`.
BundleResiduals bundle_residuals(const ModelBundle& bundle, std::uint64_t seed = kDefaultSeed,
                                 int samples = 100);

/// Throws ValidationError naming the first failed invariant.
BundleResiduals validate_bundle(const ModelBundle& bundle, std::uint64_t seed = kDefaultSeed,
                                int samples = 100);

/// max |d_eΠ(Bξ) − B δ(ξ) Bᵀ| over basis vectors ξ.
double cobracket_mismatch(const GroupModel& gm, const PoissonChart& chart, const Cobracket& delta);

struct TruthCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

/// Compares every closed form in bundle.truth with its computed counterpart.
std::vector<TruthCheck> check_ground_truth(const ModelBundle& bundle,
                                           std::uint64_t seed = kDefaultSeed, int samples = 50);

/// Per-component max |X_H − printed_sign·printed| over the points.
Vector printed_field_discrepancy(const ModelBundle& bundle, const std::vector<Vector>& points);

/// Random polynomial of total degree ≤ degree (no constant term) with
/// coefficients in [−1, 1] and an analytic gradient.
ScalarField random_polynomial(int dim, int degree, Sampler& sampler, std::string name = "poly");

/// ½ xᵀ I x
ScalarField quadratic_hamiltonian(const Matrix& inertia, std::string name = "quadratic");

}  // namespace plg

#endif
