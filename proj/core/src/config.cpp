#include "plg/expr.hpp"
#include "plg/models.hpp"

#include <json.hpp>

#include <cmath>
#include <cctype>
#include <sstream>

namespace plg {

namespace {

using json = nlohmann::ordered_json;

struct Position {
  int line = 0;
  int column = 0;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const Position p = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << source << ":" << p.line << ":" << p.column << ": JSON syntax error";
    std::string what = e.what();
    if (auto k = what.find("syntax error"); k != std::string::npos) msg << " (" << what.substr(k) << ")";
    throw ConfigError(msg.str(), p.line, p.column);
  }
}

// Context for error messages: the raw text lets us locate string literals.
struct Ctx {
  std::string_view text;
  std::string source;

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    const Position p = locate(path);
    std::ostringstream out;
    out << source << ":" << p.line << ":" << p.column << ": " << path << ": " << msg;
    throw ConfigError(out.str(), p.line, p.column);
  }

  // Best effort: the value of the innermost key of `path` that occurs in the
  // text, else the start of the file. Array indices are not resolved.
  Position locate(const std::string& path) const {
    std::vector<std::string> keys;
    std::string cur;
    for (char c : path + ".") {
      if (c == '.' || c == '[') {
        if (!cur.empty() && cur.front() != '<') keys.push_back(cur);
        cur.clear();
      } else if (c == ']') {
        cur.clear();
      } else if (!std::isdigit(static_cast<unsigned char>(c)) || !cur.empty()) {
        cur += c;
      }
    }
    for (auto k = keys.rbegin(); k != keys.rend(); ++k) {
      const std::string quoted = "\"" + *k + "\"";
      for (auto at = text.find(quoted); at != std::string_view::npos; at = text.find(quoted, at + 1)) {
        std::size_t i = at + quoted.size();
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size() || text[i] != ':') continue;
        ++i;
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        return position_of(text, i);
      }
    }
    return {1, 1};
  }

  // Locates the quoted literal in the source to turn an expression column into
  // a file position.
  [[noreturn]] void fail_expr(const std::string& path, const std::string& expr,
                              const ExpressionError& e) const {
    const std::string quoted = "\"" + expr + "\"";
    const auto at = text.find(quoted);
    if (at != std::string_view::npos) {
      const Position p = position_of(text, at + static_cast<std::size_t>(e.column()));
      std::ostringstream msg;
      msg << source << ":" << p.line << ":" << p.column << ": " << path << ": " << e.what();
      throw ConfigError(msg.str(), p.line, p.column);
    }
    throw ConfigError(source + ": " + path + ": " + e.what(), 0, e.column());
  }
};

const json& require(const Ctx& ctx, const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) ctx.fail(path, std::string("missing key '") + key + "'");
  return j.at(key);
}

double as_number(const Ctx& ctx, const json& j, const std::string& path) {
  if (!j.is_number()) ctx.fail(path, "expected a number");
  return j.get<double>();
}

std::string as_string(const Ctx& ctx, const json& j, const std::string& path) {
  if (!j.is_string()) ctx.fail(path, "expected a string");
  return j.get<std::string>();
}

Vector as_vector(const Ctx& ctx, const json& j, const std::string& path, int expected = -1) {
  if (!j.is_array()) ctx.fail(path, "expected an array of numbers");
  if (expected >= 0 && static_cast<int>(j.size()) != expected)
    ctx.fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = as_number(ctx, j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

// Integer index or a name from `names`.
int as_index(const Ctx& ctx, const json& j, const std::vector<std::string>& names,
             const std::string& path) {
  const int n = static_cast<int>(names.size());
  if (j.is_number_integer()) {
    const int i = j.get<int>();
    if (i < 0 || i >= n) ctx.fail(path, "index " + std::to_string(i) + " out of range");
    return i;
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    for (int i = 0; i < n; ++i)
      if (names[i] == s) return i;
    ctx.fail(path, "unknown name '" + s + "'");
  }
  ctx.fail(path, "expected an index or a name");
}

Expression parse_expr(const Ctx& ctx, const json& j, const std::vector<std::string>& vars,
                      const std::map<std::string, double>& consts, const std::string& path) {
  if (j.is_number()) return Expression::constant(j.get<double>());
  const std::string text = as_string(ctx, j, path);
  try {
    return Expression::parse(text, vars, consts);
  } catch (const ExpressionError& e) {
    ctx.fail_expr(path, text, e);
  }
}

ScalarField expr_field(std::string name, const Expression& e, int dim) {
  std::vector<Expression> d;
  for (int i = 0; i < dim; ++i) d.push_back(e.derivative(i));
  return {std::move(name), [e](const Vector& x) { return e.evaluate(x); },
          [d](const Vector& x) {
            Vector g(static_cast<Eigen::Index>(d.size()));
            for (std::size_t i = 0; i < d.size(); ++i) g[static_cast<Eigen::Index>(i)] = d[i].evaluate(x);
            return g;
          }};
}

LieAlgebra algebra_from_json(const Ctx& ctx, const json& j, const std::string& path, double tol) {
  if (j.is_string()) {
    try {
      return algebra_by_name(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      ctx.fail(path, e.what());
    }
  }
  const int dim = static_cast<int>(as_number(ctx, require(ctx, j, "dim", path), path + ".dim"));
  if (dim <= 0) ctx.fail(path + ".dim", "dimension must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& lj = j.at("labels");
    if (!lj.is_array() || static_cast<int>(lj.size()) != dim)
      ctx.fail(path + ".labels", "expected " + std::to_string(dim) + " labels");
    for (std::size_t i = 0; i < lj.size(); ++i)
      labels.push_back(as_string(ctx, lj[i], path + ".labels[" + std::to_string(i) + "]"));
  } else {
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i + 1));
  }
  StructureConstants c(dim);
  if (j.contains("brackets")) {
    const json& bj = j.at("brackets");
    if (!bj.is_array()) ctx.fail(path + ".brackets", "expected an array");
    for (std::size_t k = 0; k < bj.size(); ++k) {
      const std::string p = path + ".brackets[" + std::to_string(k) + "]";
      const int a = as_index(ctx, require(ctx, bj[k], "a", p), labels, p + ".a");
      const int b = as_index(ctx, require(ctx, bj[k], "b", p), labels, p + ".b");
      const Vector out = as_vector(ctx, require(ctx, bj[k], "out", p), p + ".out", dim);
      if (a == b) {
        if (max_abs(out) > 0.0) ctx.fail(p, "[e,e] must vanish");
        continue;
      }
      c.set_bracket(a, b, out);
    }
  }
  return make_algebra(std::move(c), std::move(labels), tol);
}

std::vector<std::tuple<int, int, double>> triples(const Ctx& ctx, const json& j,
                                                  const std::vector<std::string>& labels,
                                                  const std::string& path) {
  if (!j.is_array()) ctx.fail(path, "expected an array of [i, j, coefficient]");
  std::vector<std::tuple<int, int, double>> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 3) ctx.fail(p, "expected [i, j, coefficient]");
    out.emplace_back(as_index(ctx, j[k][0], labels, p + "[0]"), as_index(ctx, j[k][1], labels, p + "[1]"),
                     as_number(ctx, j[k][2], p + "[2]"));
  }
  return out;
}

std::optional<LieBialgebra> bialgebra_from_json(const Ctx& ctx, const json& j, const LieAlgebra& A,
                                                double tol) {
  const bool has_r = j.contains("r");
  const bool has_delta = j.contains("delta");
  if (!has_r && !has_delta) return std::nullopt;
  std::optional<Multivector> r;
  std::optional<Cobracket> declared;
  if (has_r) r = make_r(A.dim(), triples(ctx, j.at("r"), A.labels(), "r"));
  if (has_delta) {
    const json& dj = j.at("delta");
    if (!dj.is_array() || static_cast<int>(dj.size()) != A.dim())
      ctx.fail("delta", "expected one term list per generator (" + std::to_string(A.dim()) + ")");
    std::vector<std::vector<std::tuple<int, int, double>>> terms;
    for (std::size_t a = 0; a < dj.size(); ++a)
      terms.push_back(triples(ctx, dj[a], A.labels(), "delta[" + std::to_string(a) + "]"));
    declared = make_cobracket(A, terms);
  }
  if (r && declared) {
    const Cobracket from_r = cobracket_from_r(A, *r);
    double mismatch = 0.0;
    for (int a = 0; a < A.dim(); ++a)
      mismatch = std::max(mismatch, max_abs(Matrix(from_r[a] - (*declared)[a])));
    if (mismatch > tol) {
      std::ostringstream msg;
      msg << "r and delta disagree (residual " << mismatch << ")";
      throw ValidationError(msg.str(), mismatch);
    }
  }
  if (r) return bialgebra_from_r(A, *r, tol);
  return LieBialgebra(*declared, std::nullopt, tol);
}

std::map<std::string, double> constants_from(const Ctx& ctx, const json& root) {
  std::map<std::string, double> consts;
  if (!root.contains("params")) return consts;
  const json& pj = root.at("params");
  if (!pj.is_object()) ctx.fail("params", "expected an object of name: number");
  for (const auto& [k, v] : pj.items()) consts[k] = as_number(ctx, v, "params." + k);
  return consts;
}

std::vector<ScalarField> named_fields(const Ctx& ctx, const json& root, const char* key,
                                      const std::vector<std::string>& coords,
                                      const std::map<std::string, double>& consts) {
  std::vector<ScalarField> out;
  if (!root.contains(key)) return out;
  const json& hj = root.at(key);
  if (!hj.is_object()) ctx.fail(key, "expected an object of name: expression");
  for (const auto& [name, ej] : hj.items()) {
    const Expression e = parse_expr(ctx, ej, coords, consts, std::string(key) + "." + name);
    out.push_back(expr_field(name, e, static_cast<int>(coords.size())));
  }
  return out;
}

ModelBundle lie_poisson_from_json(const Ctx& ctx, const json& root, double tol) {
  const LieAlgebra A = algebra_from_json(ctx, require(ctx, root, "algebra", "<root>"), "algebra", tol);
  const int n = A.dim();
  Matrix I = Matrix::Identity(n, n);
  if (root.contains("inertia")) {
    const json& ij = root.at("inertia");
    if (ij.is_array() && !ij.empty() && ij[0].is_array()) {
      if (static_cast<int>(ij.size()) != n) ctx.fail("inertia", "expected a square matrix");
      for (int r = 0; r < n; ++r) I.row(r) = as_vector(ctx, ij[r], "inertia[" + std::to_string(r) + "]", n).transpose();
    } else {
      I = as_vector(ctx, ij, "inertia", n).asDiagonal();
    }
  }
  ModelBundle m = lie_poisson_model(A, I, root.value("name", std::string("config")));
  m.id = root.value("name", std::string("config"));
  const auto consts = constants_from(ctx, root);
  for (auto& h : named_fields(ctx, root, "hamiltonians", A.labels(), consts)) m.hamiltonians.push_back(h);
  m.casimirs = named_fields(ctx, root, "casimirs", A.labels(), consts);
  return m;
}

}  // namespace

LieAlgebra parse_algebra(std::string_view json_text, double tol) {
  const Ctx ctx{json_text, "<algebra>"};
  return algebra_from_json(ctx, parse_json(json_text, ctx.source), "algebra", tol);
}

LieBialgebra parse_bialgebra(std::string_view json_text, double tol) {
  const Ctx ctx{json_text, "<bialgebra>"};
  const json root = parse_json(json_text, ctx.source);
  const LieAlgebra A = algebra_from_json(ctx, require(ctx, root, "algebra", "<root>"), "algebra", tol);
  auto B = bialgebra_from_json(ctx, root, A, tol);
  if (!B) ctx.fail("<root>", "expected 'r' or 'delta'");
  return *B;
}

ModelBundle from_config_text(std::string_view text, const std::string& source) {
  const Ctx ctx{text, source};
  const json root = parse_json(text, source);
  if (!root.is_object()) ctx.fail("<root>", "expected a JSON object");
  const double tol = root.contains("tolerance") ? as_number(ctx, root.at("tolerance"), "tolerance")
                                                : Tolerances::exact;

  ModelBundle m;
  if (root.value("model", std::string()) == "lie_poisson") {
    m = lie_poisson_from_json(ctx, root, tol);
  } else {
    m.id = root.value("name", std::string("config"));
    const auto consts = constants_from(ctx, root);

    const json& cj = require(ctx, root, "coordinates", "<root>");
    if (!cj.is_array() || cj.empty()) ctx.fail("coordinates", "expected a nonempty array of names");
    std::vector<std::string> coords;
    for (std::size_t i = 0; i < cj.size(); ++i)
      coords.push_back(as_string(ctx, cj[i], "coordinates[" + std::to_string(i) + "]"));
    const int n = static_cast<int>(coords.size());

    Guard guard;
    if (root.contains("guard")) {
      const Expression g = parse_expr(ctx, root.at("guard"), coords, consts, "guard");
      guard = [g](const Vector& x) { return g.evaluate(x) > 0.0; };
    }

    // Bivector entries Π^{ij} = expr, completed antisymmetrically.
    std::vector<std::tuple<int, int, Expression>> entries;
    if (root.contains("bivector")) {
      const json& bj = root.at("bivector");
      if (!bj.is_array()) ctx.fail("bivector", "expected an array of {i, j, expr}");
      for (std::size_t k = 0; k < bj.size(); ++k) {
        const std::string p = "bivector[" + std::to_string(k) + "]";
        const int i = as_index(ctx, require(ctx, bj[k], "i", p), coords, p + ".i");
        const int j = as_index(ctx, require(ctx, bj[k], "j", p), coords, p + ".j");
        if (i == j) ctx.fail(p, "diagonal entries of a bivector must vanish");
        entries.emplace_back(i, j, parse_expr(ctx, require(ctx, bj[k], "expr", p), coords, consts, p + ".expr"));
      }
    }
    m.chart = PoissonChart(
        m.id, n,
        [entries, n](const Vector& x) {
          Matrix P = Matrix::Zero(n, n);
          for (const auto& [i, j, e] : entries) {
            const double v = e.evaluate(x);
            P(i, j) += v;
            P(j, i) -= v;
          }
          return P;
        },
        guard, coords);

    if (root.contains("group")) {
      const json& gj = root.at("group");
      GroupModel g;
      g.name = m.id;
      g.dim = n;
      g.guard = guard;
      g.identity = as_vector(ctx, require(ctx, gj, "identity", "group"), "group.identity", n);
      std::vector<std::string> pair_vars = coords;
      for (const auto& c : coords) pair_vars.push_back(c + "'");
      auto exprs = [&](const char* key, const std::vector<std::string>& vars) {
        const json& ej = require(ctx, gj, key, "group");
        if (!ej.is_array() || static_cast<int>(ej.size()) != n)
          ctx.fail(std::string("group.") + key, "expected " + std::to_string(n) + " expressions");
        std::vector<Expression> out;
        for (int i = 0; i < n; ++i)
          out.push_back(parse_expr(ctx, ej[i], vars, consts,
                                   std::string("group.") + key + "[" + std::to_string(i) + "]"));
        return out;
      };
      const auto mul = exprs("multiply", pair_vars);
      const auto inv = exprs("inverse", coords);
      g.multiply = [mul, n](const Vector& a, const Vector& b) {
        Vector ab(2 * n);
        ab << a, b;
        Vector out(n);
        for (int i = 0; i < n; ++i) out[i] = mul[i].evaluate(ab);
        return out;
      };
      g.inverse = [inv, n](const Vector& a) {
        Vector out(n);
        for (int i = 0; i < n; ++i) out[i] = inv[i].evaluate(a);
        return out;
      };
      // Exact translation Jacobians from the symbolic group law.
      std::vector<std::vector<Expression>> dl(n), dr(n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          dl[i].push_back(mul[i].derivative(n + k));
          dr[i].push_back(mul[i].derivative(k));
        }
      const Vector e = g.identity;
      g.left_jacobian = [dl, e, n](const Vector& a) {
        Vector ab(2 * n);
        ab << a, e;
        Matrix J(n, n);
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) J(i, k) = dl[i][k].evaluate(ab);
        return J;
      };
      g.right_jacobian = [dr, e, n](const Vector& a) {
        Vector ab(2 * n);
        ab << e, a;
        Matrix J(n, n);
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) J(i, k) = dr[i][k].evaluate(ab);
        return J;
      };
      if (root.contains("basis")) {
        const json& bj = root.at("basis");
        if (!bj.is_array() || static_cast<int>(bj.size()) != n)
          ctx.fail("basis", "expected " + std::to_string(n) + " basis columns");
        g.basis = Matrix(n, n);
        for (int c = 0; c < n; ++c) g.basis.col(c) = as_vector(ctx, bj[c], "basis[" + std::to_string(c) + "]", n);
        if (std::abs(g.basis.determinant()) < 1e-12) ctx.fail("basis", "basis columns are linearly dependent");
      }
      m.group = g;
    }

    if (root.contains("algebra")) {
      const LieAlgebra A = algebra_from_json(ctx, root.at("algebra"), "algebra", tol);
      if (A.dim() != n) ctx.fail("algebra", "algebra dimension does not match the coordinates");
      m.bialgebra = bialgebra_from_json(ctx, root, A, tol);
    }

    m.hamiltonians = named_fields(ctx, root, "hamiltonians", coords, consts);
    m.casimirs = named_fields(ctx, root, "casimirs", coords, consts);

    m.sampling.lo = Vector::Constant(n, -1.0);
    m.sampling.hi = Vector::Constant(n, 1.0);
    m.sampling.accept = guard;
    for (const auto& [k, v] : consts) m.params[k] = v;
  }

  if (root.contains("sampling")) {
    const json& sj = root.at("sampling");
    const int n = m.chart.dim();
    m.sampling.lo = as_vector(ctx, require(ctx, sj, "lo", "sampling"), "sampling.lo", n);
    m.sampling.hi = as_vector(ctx, require(ctx, sj, "hi", "sampling"), "sampling.hi", n);
  }
  if (root.contains("x0")) m.x0 = as_vector(ctx, root.at("x0"), "x0", m.chart.dim());
  if (m.x0.size() == 0) m.x0 = 0.5 * (m.sampling.lo + m.sampling.hi);
  if (root.contains("ground_truth")) {
    const json& tj = root.at("ground_truth");
    if (tj.contains("unimodular")) {
      if (!tj.at("unimodular").is_boolean()) ctx.fail("ground_truth.unimodular", "expected a boolean");
      m.truth.unimodular = tj.at("unimodular").get<bool>();
    }
    if (tj.contains("dual_modular_character"))
      m.truth.dual_modular_character = as_vector(ctx, tj.at("dual_modular_character"),
                                                 "ground_truth.dual_modular_character", m.chart.dim());
  }

  validate_bundle(m);
  return m;
}

}  // namespace plg
