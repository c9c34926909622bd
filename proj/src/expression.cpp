#include "varfrac/expression.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string_view>

#include <boost/math/special_functions/gamma.hpp>

#include "varfrac/errors.hpp"

namespace varfrac::expr {

namespace {

struct BuiltinInfo {
  std::string_view name;
  Builtin fn;
  std::size_t arity;
};

constexpr std::array<BuiltinInfo, 10> kBuiltins{{
    {"sin", Builtin::Sin, 1},
    {"cos", Builtin::Cos, 1},
    {"exp", Builtin::Exp, 1},
    {"ln", Builtin::Ln, 1},
    {"sqrt", Builtin::Sqrt, 1},
    {"gamma", Builtin::Gamma, 1},
    {"abs", Builtin::Abs, 1},
    {"floor", Builtin::Floor, 1},
    {"ceil", Builtin::Ceil, 1},
    {"gammainc_upper", Builtin::GammaIncUpper, 2},
}};

const BuiltinInfo* find_builtin(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

const BuiltinInfo& builtin_info(Builtin fn) {
  for (const auto& b : kBuiltins) {
    if (b.fn == fn) return b;
  }
  throw Error("unknown builtin");
}

NodePtr make(auto&& alternative) {
  return std::make_shared<const Node>(Node{std::forward<decltype(alternative)>(alternative)});
}

class Parser {
 public:
  Parser(const std::string& source, const std::vector<std::string>& variables)
      : src_(source), variables_(variables) {}

  NodePtr parse_all() {
    skip_space();
    auto e = parse_expr();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Binary{BinaryOp::Add, lhs, parse_term()});
      } else if (accept('-')) {
        lhs = make(Binary{BinaryOp::Sub, lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    auto lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Binary{BinaryOp::Mul, lhs, parse_factor()});
      } else if (accept('/')) {
        lhs = make(Binary{BinaryOp::Div, lhs, parse_factor()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (accept('-')) return make(Negate{parse_factor()});
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_atom();
    if (accept('^')) return make(Binary{BinaryOp::Pow, base, parse_factor()});
    return base;
  }

  NodePtr parse_atom() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c >= 'a' && c <= 'z') return parse_identifier();
    if (accept('(')) {
      auto inner = parse_expr();
      expect(')');
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail_at("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail_at("malformed exponent", start);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(value)) {
      fail_at("number out of range", start);
    }
    return make(Number{value});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           ((src_[pos_] >= 'a' && src_[pos_] <= 'z') ||
            std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = src_.substr(start, pos_ - start);
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      const BuiltinInfo* info = find_builtin(name);
      if (info == nullptr) fail_at("unknown function '" + name + "'", start);
      ++pos_;
      std::vector<NodePtr> args;
      args.push_back(parse_expr());
      while (accept(',')) args.push_back(parse_expr());
      expect(')');
      if (args.size() != info->arity) {
        fail_at("function '" + name + "' takes " + std::to_string(info->arity) +
                    " argument(s), got " + std::to_string(args.size()),
                start);
      }
      return make(Call{info->fn, std::move(args)});
    }
    const auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it != variables_.end()) {
      return make(Variable{name, static_cast<std::size_t>(it - variables_.begin())});
    }
    if (name == "pi") return make(Number{std::numbers::pi});
    if (find_builtin(name) != nullptr) fail_at("function '" + name + "' used without arguments", start);
    fail_at("unknown identifier '" + name + "'", start);
  }

  const std::string& src_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

[[noreturn]] void eval_fail(const std::string& what) { throw EvalError(what); }

double checked(double v, const char* what) {
  if (!std::isfinite(v)) eval_fail(std::string(what) + " produced a non-finite value");
  return v;
}

double eval_node(const Node& node, std::span<const double> values);

double eval_call(const Call& call, std::span<const double> values) {
  const double x = eval_node(*call.args[0], values);
  switch (call.fn) {
    case Builtin::Sin:
      return std::sin(x);
    case Builtin::Cos:
      return std::cos(x);
    case Builtin::Exp:
      return checked(std::exp(x), "exp");
    case Builtin::Ln:
      if (!(x > 0.0)) eval_fail("ln of non-positive argument");
      return std::log(x);
    case Builtin::Sqrt:
      if (x < 0.0) eval_fail("sqrt of negative argument");
      return std::sqrt(x);
    case Builtin::Gamma:
      if (!(x > 0.0)) eval_fail("gamma of non-positive argument");
      return checked(std::tgamma(x), "gamma");
    case Builtin::Abs:
      return std::abs(x);
    case Builtin::Floor:
      return std::floor(x);
    case Builtin::Ceil:
      return std::ceil(x);
    case Builtin::GammaIncUpper: {
      const double y = eval_node(*call.args[1], values);
      return gammainc_upper(x, y);
    }
  }
  eval_fail("unknown builtin");
}

double eval_node(const Node& node, std::span<const double> values) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          if (n.slot >= values.size()) eval_fail("variable '" + n.name + "' is unbound");
          return values[n.slot];
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval_node(*n.operand, values);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = eval_node(*n.lhs, values);
          const double b = eval_node(*n.rhs, values);
          switch (n.op) {
            case BinaryOp::Add:
              return checked(a + b, "addition");
            case BinaryOp::Sub:
              return checked(a - b, "subtraction");
            case BinaryOp::Mul:
              return checked(a * b, "multiplication");
            case BinaryOp::Div:
              if (b == 0.0) eval_fail("division by zero");
              return checked(a / b, "division");
            case BinaryOp::Pow:
              if (a == 0.0 && b < 0.0) eval_fail("zero raised to a negative power");
              return checked(std::pow(a, b), "power");
          }
          eval_fail("unknown operator");
        } else {
          return eval_call(n, values);
        }
      },
      node.data);
}

void print_node(const Node& node, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          std::array<char, 32> buf{};
          const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
          out.append(buf.data(), res.ptr);
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += "(-";
          print_node(*n.operand, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Binary>) {
          static constexpr std::array<const char*, 5> kOps{" + ", " - ", " * ", " / ", "^"};
          out += '(';
          print_node(*n.lhs, out);
          out += kOps[static_cast<std::size_t>(n.op)];
          print_node(*n.rhs, out);
          out += ')';
        } else {
          out += builtin_info(n.fn).name;
          out += '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) out += ", ";
            print_node(*n.args[i], out);
          }
          out += ')';
        }
      },
      node.data);
}

}  // namespace

double gammainc_upper(double a, double x) {
  if (!(a > 0.0)) eval_fail("gammainc_upper requires a > 0");
  if (x < 0.0) eval_fail("gammainc_upper requires x >= 0");
  double value = 0.0;
  try {
    value = boost::math::tgamma(a, x);
  } catch (const std::exception&) {
    eval_fail("gammainc_upper out of range");
  }
  return checked(value, "gammainc_upper");
}

Expr parse(const std::string& source, std::vector<std::string> variables) {
  for (const auto& v : variables) {
    if (v == "pi" || find_builtin(v) != nullptr) {
      throw ParseError("variable name '" + v + "' is reserved", 1, 1);
    }
  }
  Parser parser(source, variables);
  auto root = parser.parse_all();
  return Expr(std::move(root), std::move(variables));
}

std::string print(const Expr& e) {
  std::string out;
  if (!e.empty()) print_node(e.root(), out);
  return out;
}

double eval(const Expr& e, std::span<const double> values) {
  if (e.empty()) eval_fail("empty expression");
  if (values.size() < e.variables().size()) eval_fail("not every variable is bound");
  return eval_node(e.root(), values);
}

double eval(const Expr& e, const std::map<std::string, double>& env) {
  std::vector<double> values;
  values.reserve(e.variables().size());
  for (const auto& name : e.variables()) {
    const auto it = env.find(name);
    if (it == env.end()) eval_fail("variable '" + name + "' is unbound");
    values.push_back(it->second);
  }
  return eval(e, values);
}

double Expr::operator()(std::span<const double> values) const { return eval(*this, values); }

double Expr::operator()(double value) const {
  return eval(*this, std::span<const double>(&value, 1));
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.data);
        if constexpr (std::is_same_v<T, Number>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return x.name == y.name && x.slot == y.slot;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return structurally_equal(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                 structurally_equal(*x.rhs, *y.rhs);
        } else {
          if (x.fn != y.fn || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!structurally_equal(*x.args[i], *y.args[i])) return false;
          }
          return true;
        }
      },
      a.data);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return a.variables_ == b.variables_ && structurally_equal(*a.root_, *b.root_);
}

}  // namespace varfrac::expr
