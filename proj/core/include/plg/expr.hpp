#ifndef PLG_EXPR_HPP
#define PLG_EXPR_HPP

#include "plg/numeric.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plg {

/// Parse failure in an arithmetic expression; `column` is 1-based.
class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const std::string& what, int column)
      : std::runtime_error(what), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

/// Small arithmetic expression over named real variables.
///
/// Grammar: + - * / ^, unary minus, parentheses, numbers, variables, named
/// constants, and the functions exp, log, sinh, cosh, sqrt, sin, cos. `^` is
/// right-associative and binds tighter than unary minus (-x^2 = -(x^2)).
/// Identifiers may end in apostrophes (x', y'') so that a group law can refer
/// to the coordinates of both factors.
class Expression {
 public:
  struct Node;

  Expression();

  static Expression parse(std::string_view text, const std::vector<std::string>& variables,
                          const std::map<std::string, double>& constants = {});
  static Expression constant(double v);

  double evaluate(const Vector& vars) const;
  /// Symbolic partial derivative with respect to variable `index`.
  Expression derivative(int index) const;
  std::string to_string() const;
  bool is_constant() const;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
  friend class ExpressionParser;
};

}  // namespace plg

#endif
