#pragma once

#include <map>
#include <memory>
#include <span>
#include <utility>
#include <string>
#include <variant>
#include <vector>

namespace varfrac::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class Builtin { Sin, Cos, Exp, Ln, Sqrt, Gamma, Abs, Floor, Ceil, GammaIncUpper };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable expression tree. Variables are resolved to slots at parse time;
/// slot k reads values[k] during evaluation.
class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr root, std::vector<std::string> variables)
      : root_(std::move(root)), variables_(std::move(variables)) {}

  const Node& root() const { return *root_; }
  bool empty() const noexcept { return !root_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  /// Evaluates with values[k] bound to variables()[k].
  double operator()(std::span<const double> values) const;
  /// Evaluates a single-variable expression.
  double operator()(double value) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
  std::vector<std::string> variables_;
};

struct Number {
  double value;
};
struct Variable {
  std::string name;
  std::size_t slot;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Builtin fn;
  std::vector<NodePtr> args;
};

struct Node {
  std::variant<Number, Variable, Negate, Binary, Call> data;
};

/// Parses `source` with the given free variables (default: just `t`).
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
///
/// `^` is right associative and binds tighter than unary minus, so -2^2 is -4.
/// The constant `pi` is always available.
Expr parse(const std::string& source, std::vector<std::string> variables = {"t"});

/// Fully parenthesised text that parses back to a structurally equal tree.
std::string print(const Expr& e);

double eval(const Expr& e, std::span<const double> values);
double eval(const Expr& e, const std::map<std::string, double>& env);

bool structurally_equal(const Node& a, const Node& b);

/// Upper incomplete gamma Gamma(a, x) for a > 0, x >= 0.
double gammainc_upper(double a, double x);

}  // namespace varfrac::expr
