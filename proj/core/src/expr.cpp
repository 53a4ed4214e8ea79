#include "conflab/expr.hpp"

#include <cmath>

#include "conflab/errors.hpp"

namespace conflab {

struct Expr::Node {
  Op op = Op::Num;
  Rational value;
  int index = -1;
  std::string name;
  int exponent = 0;
  std::vector<Expr> args;
};

Expr make_node(Op op, std::vector<Expr> args, Rational value, int index, std::string name, int exponent) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->args = std::move(args);
  n->value = std::move(value);
  n->index = index;
  n->name = std::move(name);
  n->exponent = exponent;
  return Expr(std::move(n));
}

namespace {

Expr node(Op op, std::vector<Expr> args) { return make_node(op, std::move(args), Rational(0), -1, "", 0); }

Rational rational_pow(const Rational& base, int k) {
  if (k < 0) {
    if (sgn(base) == 0) throw Error(ErrorKind::Domain, "zero raised to a negative power");
    return rational_pow(Rational(1) / base, -k);
  }
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

Expr::Expr() : Expr(num(Rational(0))) {}

Expr Expr::num(const Rational& value) { return make_node(Op::Num, {}, value, -1, "", 0); }

Expr Expr::var(int index, std::string name) { return make_node(Op::Var, {}, Rational(0), index, std::move(name), 0); }

Op Expr::op() const { return node_->op; }
const Rational& Expr::value() const { return node_->value; }
int Expr::var_index() const { return node_->index; }
const std::string& Expr::var_name() const { return node_->name; }
int Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

bool Expr::is_num(const Rational& v) const { return op() == Op::Num && value() == v; }

bool Expr::operator==(const Expr& o) const {
  if (node_ == o.node_) return true;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case Op::Num:
      if (a.value != b.value) return false;
      break;
    case Op::Var:
      if (a.index != b.index || a.name != b.name) return false;
      break;
    case Op::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(a.args[i] == b.args[i])) return false;
  return true;
}

std::size_t Expr::node_count() const {
  std::size_t c = 1;
  for (const auto& a : args()) c += a.node_count();
  return c;
}

Expr operator-(const Expr& a) {
  if (a.is_num()) return Expr::num(-a.value());
  if (a.op() == Op::Neg) return a.args()[0];
  return node(Op::Neg, {a});
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_num() && b.is_num()) return Expr::num(a.value() + b.value());
  if (a.is_num(0)) return b;
  if (b.is_num(0)) return a;
  return node(Op::Add, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_num() && b.is_num()) return Expr::num(a.value() - b.value());
  if (b.is_num(0)) return a;
  if (a.is_num(0)) return -b;
  return node(Op::Sub, {a, b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_num() && b.is_num()) return Expr::num(a.value() * b.value());
  if (a.is_num(0) || b.is_num(0)) return Expr::num(0);
  if (a.is_num(1)) return b;
  if (b.is_num(1)) return a;
  return node(Op::Mul, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_num(0)) throw Error(ErrorKind::Domain, "division by the constant 0");
  if (a.is_num() && b.is_num()) return Expr::num(a.value() / b.value());
  if (a.is_num(0)) return Expr::num(0);
  if (b.is_num(1)) return a;
  return node(Op::Div, {a, b});
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr::num(1);
  if (exponent == 1) return base;
  if (base.is_num()) return Expr::num(rational_pow(base.value(), exponent));
  return make_node(Op::Pow, {base}, Rational(0), -1, "", exponent);
}

Expr exp(const Expr& a) {
  if (a.is_num(0)) return Expr::num(1);
  return node(Op::Exp, {a});
}

Expr sin(const Expr& a) {
  if (a.is_num(0)) return Expr::num(0);
  return node(Op::Sin, {a});
}

Expr cos(const Expr& a) {
  if (a.is_num(0)) return Expr::num(1);
  return node(Op::Cos, {a});
}

Expr sqrt(const Expr& a) {
  if (a.is_num() && sgn(a.value()) >= 0)
    if (auto r = exact_sqrt(a.value())) return Expr::num(*r);
  return node(Op::Sqrt, {a});
}

Expr log(const Expr& a) {
  if (a.is_num(1)) return Expr::num(0);
  return node(Op::Log, {a});
}

bool is_function_name(const std::string& name) {
  return name == "exp" || name == "sin" || name == "cos" || name == "sqrt" || name == "log";
}

Expr apply_function(const std::string& name, const Expr& arg) {
  if (name == "exp") return exp(arg);
  if (name == "sin") return sin(arg);
  if (name == "cos") return cos(arg);
  if (name == "sqrt") return sqrt(arg);
  if (name == "log") return log(arg);
  throw Error(ErrorKind::Domain, "unknown function '" + name + "'");
}

namespace {

const char* function_name(Op op) {
  switch (op) {
    case Op::Exp: return "exp";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sqrt: return "sqrt";
    case Op::Log: return "log";
    default: return nullptr;
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Num: {
      const Rational& v = e.value();
      if (sgn(v) >= 0 && v.get_den() == 1) out += v.get_str();
      else out += "(" + v.get_str() + ")";
      return;
    }
    case Op::Var: out += e.var_name(); return;
    case Op::Neg:
      out += "(-";
      print(e.args()[0], out);
      out += ")";
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char sym = e.op() == Op::Add ? '+' : e.op() == Op::Sub ? '-' : e.op() == Op::Mul ? '*' : '/';
      out += "(";
      print(e.args()[0], out);
      out += sym;
      print(e.args()[1], out);
      out += ")";
      return;
    }
    case Op::Pow:
      out += "(";
      print(e.args()[0], out);
      out += "^";
      if (e.exponent() < 0) out += "(" + std::to_string(e.exponent()) + ")";
      else out += std::to_string(e.exponent());
      out += ")";
      return;
    default:
      out += function_name(e.op());
      out += "(";
      print(e.args()[0], out);
      out += ")";
  }
}

[[noreturn]] void domain_failure(const char* what) { throw Error(ErrorKind::Evaluation, what); }

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

double evaluate(const Expr& e, const std::vector<double>& x) {
  switch (e.op()) {
    case Op::Num: return e.value().get_d();
    case Op::Var:
      if (e.var_index() < 0 || static_cast<std::size_t>(e.var_index()) >= x.size())
        throw Error(ErrorKind::Dimension, "evaluation point has too few coordinates");
      return x[static_cast<std::size_t>(e.var_index())];
    case Op::Neg: return -evaluate(e.args()[0], x);
    case Op::Add: return evaluate(e.args()[0], x) + evaluate(e.args()[1], x);
    case Op::Sub: return evaluate(e.args()[0], x) - evaluate(e.args()[1], x);
    case Op::Mul: return evaluate(e.args()[0], x) * evaluate(e.args()[1], x);
    case Op::Div: {
      double d = evaluate(e.args()[1], x);
      if (d == 0.0) domain_failure("division by zero during evaluation");
      return evaluate(e.args()[0], x) / d;
    }
    case Op::Pow: {
      double b = evaluate(e.args()[0], x);
      if (b == 0.0 && e.exponent() < 0) domain_failure("zero raised to a negative power");
      return std::pow(b, e.exponent());
    }
    case Op::Exp: return std::exp(evaluate(e.args()[0], x));
    case Op::Sin: return std::sin(evaluate(e.args()[0], x));
    case Op::Cos: return std::cos(evaluate(e.args()[0], x));
    case Op::Sqrt: {
      double a = evaluate(e.args()[0], x);
      if (a < 0) domain_failure("sqrt of a negative value");
      return std::sqrt(a);
    }
    case Op::Log: {
      double a = evaluate(e.args()[0], x);
      if (a <= 0) domain_failure("log of a non-positive value");
      return std::log(a);
    }
  }
  return 0;
}

Expr differentiate(const Expr& e, int index) {
  const auto& a = e.args();
  switch (e.op()) {
    case Op::Num: return Expr::num(0);
    case Op::Var: return Expr::num(e.var_index() == index ? 1 : 0);
    case Op::Neg: return -differentiate(a[0], index);
    case Op::Add: return differentiate(a[0], index) + differentiate(a[1], index);
    case Op::Sub: return differentiate(a[0], index) - differentiate(a[1], index);
    case Op::Mul: return differentiate(a[0], index) * a[1] + a[0] * differentiate(a[1], index);
    case Op::Div: {
      Expr du = differentiate(a[0], index), dv = differentiate(a[1], index);
      return du / a[1] - a[0] * dv / pow(a[1], 2);
    }
    case Op::Pow:
      return Expr::num(e.exponent()) * pow(a[0], e.exponent() - 1) * differentiate(a[0], index);
    case Op::Exp: return e * differentiate(a[0], index);
    case Op::Sin: return cos(a[0]) * differentiate(a[0], index);
    case Op::Cos: return -(sin(a[0]) * differentiate(a[0], index));
    case Op::Sqrt: return differentiate(a[0], index) / (Expr::num(2) * e);
    case Op::Log: return differentiate(a[0], index) / a[0];
  }
  return Expr::num(0);
}

}  // namespace conflab
