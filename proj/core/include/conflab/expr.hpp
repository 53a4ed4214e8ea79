#pragma once

#include <memory>
#include <string>
#include <vector>

#include "conflab/rational.hpp"

namespace conflab {

enum class Op { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Sin, Cos, Sqrt, Log };

/// Immutable expression tree over chart coordinates. Copies share nodes.
///
/// All construction goes through the factory functions below, which fold
/// constant subtrees and the identities x+0, x*1, x*0, x/1, x^0, x^1 and
/// -(-x). No other simplification is attempted.
class Expr {
 public:
  struct Node;

  /// The literal 0.
  Expr();

  static Expr num(const Rational& value);
  /// Coordinate number `index` (0-based) with its display name.
  static Expr var(int index, std::string name);

  Op op() const;
  const Rational& value() const;       ///< Num only
  int var_index() const;               ///< Var only
  const std::string& var_name() const; ///< Var only
  int exponent() const;                ///< Pow only
  const std::vector<Expr>& args() const;

  bool is_num() const { return op() == Op::Num; }
  bool is_num(const Rational& v) const;

  /// Structural equality of trees.
  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }

  std::size_t node_count() const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Expr make_node(Op op, std::vector<Expr> args, Rational value, int index, std::string name, int exponent);
  std::shared_ptr<const Node> node_;
};

Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, int exponent);
Expr exp(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);
Expr log(const Expr& a);

/// Applies a named function ("exp", "sin", "cos", "sqrt", "log").
Expr apply_function(const std::string& name, const Expr& arg);
bool is_function_name(const std::string& name);

/// Fully parenthesized text that parses back to an identical tree.
std::string to_string(const Expr& e);

/// Floating evaluation; x is indexed by coordinate number. Throws
/// Error(Evaluation) on division by zero or an argument outside the domain
/// of sqrt or log.
double evaluate(const Expr& e, const std::vector<double>& x);

/// Exact symbolic partial derivative with respect to coordinate `index`.
Expr differentiate(const Expr& e, int index);

/// Parses an expression over the given coordinate names. Throws ParseError.
Expr parse_expr(const std::string& text, const std::vector<std::string>& coords);

}  // namespace conflab
