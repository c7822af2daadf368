#include "plg/models.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace plg;

namespace {

std::vector<Vector> points(const ModelBundle& m, int n, std::uint64_t seed = 51) {
  Sampler s(seed);
  return s.draw(m.sampling, n);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallConfig = R"({
  "name": "plane",
  "coordinates": ["p", "q"],
  "bivector": [{"i": "p", "j": "q", "expr": "1 + p*q"}],
  "hamiltonians": {"H": "p^2 + q^2"}
})";

}  // namespace

TEST(Models, BuiltinsValidate) {
  for (const auto& id : builtin_model_ids()) {
    const ModelBundle m = builtin_model(id);
    BundleResiduals r;
    ASSERT_NO_THROW(r = validate_bundle(m)) << id;
    EXPECT_LT(r.jacobi, 1e-6) << id;
    EXPECT_LT(r.cobracket_mismatch, 1e-5) << id;
    EXPECT_EQ(r.antisymmetry, 0.0) << id;
  }
}

TEST(Models, GroundTruthChecksPass) {
  for (const auto& id : builtin_model_ids()) {
    const ModelBundle m = builtin_model(id);
    const auto checks = check_ground_truth(m);
    EXPECT_FALSE(checks.empty()) << id;
    for (const auto& c : checks) EXPECT_TRUE(c.passed()) << id << " " << c.name << " " << c.residual;
  }
}

TEST(Models, GroundTruthAcrossDeformationParameters) {
  for (double eta : {0.05, 0.3, 1.0}) {
    ModelOptions o;
    o.eta = eta;
    for (const char* id : {"lorenz", "eulertop"}) {
      const ModelBundle m = builtin_model(id, o);
      ASSERT_NO_THROW(validate_bundle(m, 7, 40)) << id << " eta=" << eta;
      for (const auto& c : check_ground_truth(m, 7, 20)) EXPECT_TRUE(c.passed()) << id << " " << c.name;
    }
  }
}

TEST(Models, Sl2rPrintedFieldDisagreesOffDiagonal) {
  const ModelBundle m = builtin_model("sl2r");
  const Vector d = printed_field_discrepancy(m, points(m, 30));
  ASSERT_EQ(d.size(), 4);
  EXPECT_LT(d[0], 1e-10);
  EXPECT_GT(d[1], 1e-3);
  EXPECT_GT(d[2], 1e-3);
  EXPECT_LT(d[3], 1e-10);
}

TEST(Models, SecondStructureIsPromoted) {
  const ModelBundle m = builtin_model("eulertop");
  const ModelBundle p = with_structure(m, "pi1");
  EXPECT_EQ(p.primary_structure, "pi1");
  ASSERT_EQ(p.companions.size(), 1u);
  EXPECT_EQ(p.companions.front().name, "pi0");
  EXPECT_NO_THROW(validate_bundle(p));
  EXPECT_THROW(with_structure(m, "pi7"), std::out_of_range);
}

TEST(Models, BiHamiltonianRecursion) {
  // Π0♯dH0 = Π1♯dH1 on the deformed Euler top.
  const ModelBundle m = builtin_model("eulertop");
  const PoissonChart& pi1 = m.companions.front().chart;
  const VectorFn X0 = hamiltonian_field(m.chart, m.hamiltonian("H0"));
  const VectorFn X1 = hamiltonian_field(pi1, m.hamiltonian("H1"));
  for (const auto& x : points(m, 20)) EXPECT_LT((X0(x) - X1(x)).cwiseAbs().maxCoeff(), 1e-10);
  for (double lambda : {-1.0, 0.3, 2.0}) {
    const PoissonChart p = pencil(m.chart, pi1, lambda);
    for (const auto& x : points(m, 5)) EXPECT_LT(jacobi_residual(p, x), 1e-6) << lambda;
  }
}

TEST(Models, SmallDeformationApproachesLinearLimit) {
  ModelOptions o;
  o.eta = 1e-6;
  for (const char* id : {"lorenz", "eulertop"}) {
    const ModelBundle m = builtin_model(id, o);
    const GroundTruth& t = m.truth;
    ASSERT_TRUE(t.limit_bivector && t.limit_field) << id;
    const VectorFn X = hamiltonian_field(m.chart, m.hamiltonian(t.printed_hamiltonian));
    for (const auto& x : points(m, 10)) {
      EXPECT_LT((m.chart.raw(x) - t.limit_bivector(x)).cwiseAbs().maxCoeff(), 1e-5) << id;
      EXPECT_LT((X(x) - t.printed_sign * t.limit_field(x)).cwiseAbs().maxCoeff(), 1e-5) << id;
    }
  }
}

TEST(Models, UnknownNamesThrow) {
  const ModelBundle m = builtin_model("sl2r");
  EXPECT_THROW(m.hamiltonian("nope"), std::out_of_range);
  EXPECT_THROW(builtin_model("nope"), std::invalid_argument);
  EXPECT_THROW(algebra_by_name("nope"), std::invalid_argument);
}

TEST(Models, AlgebraShorthands) {
  const LieAlgebra a = algebra_by_name("abelian3");
  EXPECT_EQ(a.dim(), 3);
  for (int g = 0; g < 3; ++g)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(a.c(g, i, j), 0.0);
  const LieAlgebra b = algebra_by_name("book:0.5");
  EXPECT_NEAR(modular_character(b).character.cwiseAbs().maxCoeff(), 1.0, 1e-14);
}

TEST(Models, LiePoissonModelWithOtherAlgebras) {
  for (const char* name : {"so3", "sl2", "book:0.5", "affine2d", "abelian3"}) {
    ModelOptions o;
    o.algebra = name;
    const ModelBundle m = builtin_model("liepoisson", o);
    EXPECT_NO_THROW(validate_bundle(m, 3, 20)) << name;
  }
}

TEST(Models, RandomPolynomialGradient) {
  Sampler s(61);
  for (int dim : {2, 3, 4}) {
    const ScalarField P = random_polynomial(dim, 3, s);
    const Vector x = Vector::LinSpaced(dim, -0.7, 0.9);
    EXPECT_LT((P.grad(x) - fd::gradient(P.value, x)).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_EQ(P.value(Vector::Zero(dim)), 0.0);
  }
}

TEST(Models, QuadraticHamiltonian) {
  Matrix I(2, 2);
  I << 2, 1, 1, 3;
  const ScalarField H = quadratic_hamiltonian(I);
  const Vector x = (Vector(2) << 1, -1).finished();
  EXPECT_DOUBLE_EQ(H(x), 1.5);
  EXPECT_LT((H.grad(x) - I * x).norm(), 1e-15);
  I(0, 1) = 0;
  EXPECT_THROW(quadratic_hamiltonian(I), ValidationError);
}

TEST(Config, GoldenSl2rMatchesBuiltin) {
  const ModelBundle c = from_config(std::string(PLG_SOURCE_DIR) + "/configs/sl2r.json");
  const ModelBundle b = builtin_model("sl2r");
  for (const auto& x : points(b, 20)) {
    EXPECT_LT((c.chart.raw(x) - b.chart.raw(x)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((c.group->multiply(x, b.x0) - b.group->multiply(x, b.x0)).cwiseAbs().maxCoeff(), 1e-12);
  }
  for (const auto& t : check_ground_truth(c)) EXPECT_TRUE(t.passed()) << t.name;
  const auto v = pl_unimodularity(*c.bialgebra);
  EXPECT_FALSE(v.is_unimodular);
  const MorseReport r = morse_report(*c.group, c.hamiltonian("contrast"), *c.bialgebra);
  EXPECT_EQ(r.verdict, kVerdictNoVolume);
}

TEST(Config, MinimalConfigLoads) {
  const ModelBundle m = from_config_text(kSmallConfig);
  EXPECT_EQ(m.id, "plane");
  EXPECT_EQ(m.chart.dim(), 2);
  const Vector x = (Vector(2) << 0.5, 2.0).finished();
  EXPECT_DOUBLE_EQ(m.chart.raw(x)(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(m.chart.raw(x)(1, 0), -2.0);
  EXPECT_LT((m.hamiltonian("H").grad(x) - 2 * x).norm(), 1e-15);
}

TEST(Config, LiePoissonConfig) {
  const ModelBundle m = from_config_text(R"({
    "model": "lie_poisson", "name": "top", "algebra": "so3", "inertia": [1, 2, 3],
    "casimirs": {"norm": "e1^2 + e2^2 + e3^2"}
  })");
  EXPECT_EQ(m.id, "top");
  EXPECT_EQ(m.hamiltonians.front().name, "quadratic");
  EXPECT_TRUE(pl_unimodularity(*m.bialgebra).is_unimodular);
}

TEST(Config, SyntaxErrorCarriesPosition) {
  try {
    from_config_text("{\n  \"name\": \"x\",\n  \"coordinates\": [\"p\" \"q\"]\n}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    // The reported column is the end of the offending token.
    EXPECT_EQ(e.column(), 25);
  }
}

TEST(Config, ExpressionErrorCarriesPosition) {
  std::string text = kSmallConfig;
  text.replace(text.find("1 + p*q"), 7, "1 + p*)");
  try {
    from_config_text(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_GT(e.column(), 40);
  }
}

TEST(Config, SemanticErrorsPointAtTheKey) {
  std::string text = kSmallConfig;
  text.replace(text.find("\"j\": \"q\""), 8, "\"j\": \"r\"");
  try {
    from_config_text(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_NE(std::string(e.what()).find("unknown name 'r'"), std::string::npos);
  }
  try {
    from_config_text("{\"name\": \"x\"}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_NE(std::string(e.what()).find("coordinates"), std::string::npos);
  }
}

TEST(Config, NonPoissonBivectorRejectedWithResidual) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const char* monomials[] = {"x*x", "y*y", "z*z", "x*y", "x*z", "y*z"};
  const char* pairs[][2] = {{"x", "y"}, {"x", "z"}, {"y", "z"}};
  std::ostringstream os;
  os.precision(17);
  os << R"({"coordinates": ["x", "y", "z"], "bivector": [)";
  for (int c = 0; c < 3; ++c) {
    os << (c ? "," : "") << R"({"i": ")" << pairs[c][0] << R"(", "j": ")" << pairs[c][1] << R"(", "expr": ")";
    for (int k = 0; k < 6; ++k) os << (k ? " + " : "") << "(" << u(rng) << ")*" << monomials[k];
    os << "\"}";
  }
  os << "]}";
  try {
    from_config_text(os.str());
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_GT(e.residual(), 1e-3);
    EXPECT_NE(std::string(e.what()).find("Jacobi"), std::string::npos);
  }
}

TEST(Config, SingularBasisRejected) {
  std::string text = read_file(std::string(PLG_SOURCE_DIR) + "/configs/sl2r.json");
  text.replace(text.find("[0.5, 0, 0, 0.5]"), 16, "[2, 0, 0, -2]");
  EXPECT_THROW(from_config_text(text), ConfigError);
}

TEST(Config, MissingFileIsAConfigError) {
  EXPECT_THROW(from_config("/nonexistent/model.json"), ConfigError);
}
