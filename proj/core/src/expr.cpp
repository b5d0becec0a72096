#include "solvagen/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace solvagen {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::UnknownIdentifier: return "unknown identifier";
    case ErrorCode::UnboundVariable: return "unbound variable";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::InvalidParameter: return "invalid parameter";
    case ErrorCode::Constraint: return "constraint violation";
    case ErrorCode::SingularPoint: return "singular point";
    case ErrorCode::NoBoundState: return "no bound state";
    case ErrorCode::NoConvergence: return "no convergence";
    case ErrorCode::FallToCenter: return "fall to center";
    case ErrorCode::Io: return "i/o error";
  }
  return "error";
}

}  // namespace solvagen

namespace solvagen::expr {

struct Expr::Node {
  Op op = Op::Constant;
  double value = 0.0;  // Constant value or Pow exponent
  std::string name;
  std::vector<Expr> args;
};

namespace {

const Expr& zero_constant() {
  static const Expr z = Expr::constant(0.0);
  return z;
}

}  // namespace

const char* op_name(Op op) {
  switch (op) {
    case Op::Constant: return "const";
    case Op::Variable: return "var";
    case Op::Add: return "add";
    case Op::Mul: return "mul";
    case Op::Pow: return "pow";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    case Op::Tanh: return "tanh";
    case Op::Sech: return "sech";
  }
  return "?";
}

bool is_function(Op op) {
  switch (op) {
    case Op::Exp:
    case Op::Ln:
    case Op::Sin:
    case Op::Cos:
    case Op::Tan:
    case Op::Sinh:
    case Op::Cosh:
    case Op::Tanh:
    case Op::Sech:
      return true;
    default:
      return false;
  }
}

Expr::Expr() : Expr(zero_constant()) {}

Expr::Expr(double value) : Expr(constant(value)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->value = value == 0.0 ? 0.0 : value;  // no negative zero
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::add(std::vector<Expr> terms) {
  if (terms.empty()) return constant(0.0);
  if (terms.size() == 1) return terms.front();
  auto n = std::make_shared<Node>();
  n->op = Op::Add;
  n->args = std::move(terms);
  return Expr(std::move(n));
}

Expr Expr::mul(std::vector<Expr> factors) {
  if (factors.empty()) return constant(1.0);
  if (factors.size() == 1) return factors.front();
  auto n = std::make_shared<Node>();
  n->op = Op::Mul;
  n->args = std::move(factors);
  return Expr(std::move(n));
}

Expr Expr::pow(Expr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->value = exponent;
  n->args.push_back(std::move(base));
  return Expr(std::move(n));
}

Expr Expr::apply(Op function, Expr argument) {
  if (!is_function(function)) throw std::invalid_argument("Expr::apply: not a function op");
  auto n = std::make_shared<Node>();
  n->op = function;
  n->args.push_back(std::move(argument));
  return Expr(std::move(n));
}

Op Expr::op() const { return node_->op; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
double Expr::exponent() const { return node_->value; }
std::span<const Expr> Expr::args() const { return node_->args; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::add({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::mul({a, Expr::pow(b, -1.0)}); }
Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  return Expr::mul({Expr::constant(-1.0), a});
}

Expr pow(const Expr& base, double exponent) { return Expr::pow(base, exponent); }
Expr sqrt(const Expr& a) { return Expr::pow(a, 0.5); }
Expr exp(const Expr& a) { return Expr::apply(Op::Exp, a); }
Expr ln(const Expr& a) { return Expr::apply(Op::Ln, a); }
Expr sin(const Expr& a) { return Expr::apply(Op::Sin, a); }
Expr cos(const Expr& a) { return Expr::apply(Op::Cos, a); }
Expr tan(const Expr& a) { return Expr::apply(Op::Tan, a); }
Expr sinh(const Expr& a) { return Expr::apply(Op::Sinh, a); }
Expr cosh(const Expr& a) { return Expr::apply(Op::Cosh, a); }
Expr tanh(const Expr& a) { return Expr::apply(Op::Tanh, a); }
Expr sech(const Expr& a) { return Expr::apply(Op::Sech, a); }

Bindings::Bindings(std::initializer_list<std::pair<std::string, double>> init) {
  for (const auto& [k, v] : init) set(k, v);
}

Bindings& Bindings::set(std::string_view name, double value) {
  for (auto& entry : entries_) {
    if (entry.first == name) {
      entry.second = value;
      return *this;
    }
  }
  entries_.emplace_back(std::string(name), value);
  return *this;
}

std::optional<double> Bindings::get(std::string_view name) const {
  for (const auto& entry : entries_) {
    if (entry.first == name) return entry.second;
  }
  return std::nullopt;
}

namespace {

bool is_integer(double p) { return std::floor(p) == p && std::abs(p) < 1e15; }

Expected<double> checked(double v, const char* what) {
  if (!std::isfinite(v)) return make_error(ErrorCode::Domain, std::string("non-finite result in ") + what);
  return v;
}

struct Evaluator {
  const Bindings& bindings;

  Expected<double> operator()(const Expr& e) const {
    switch (e.op()) {
      case Op::Constant:
        return e.value();
      case Op::Variable: {
        auto v = bindings.get(e.name());
        if (!v) return make_error(ErrorCode::UnboundVariable, "variable '" + e.name() + "' is not bound");
        return *v;
      }
      case Op::Add: {
        double sum = 0.0;
        for (const auto& t : e.args()) {
          auto v = (*this)(t);
          if (!v) return v;
          sum += *v;
        }
        return checked(sum, "sum");
      }
      case Op::Mul: {
        double prod = 1.0;
        for (const auto& f : e.args()) {
          auto v = (*this)(f);
          if (!v) return v;
          prod *= *v;
        }
        return checked(prod, "product");
      }
      case Op::Pow: {
        auto b = (*this)(e.arg());
        if (!b) return b;
        const double p = e.exponent();
        if (*b == 0.0 && p < 0.0) return make_error(ErrorCode::Domain, "division by zero (pole of negative power)");
        if (*b < 0.0 && !is_integer(p)) {
          return make_error(ErrorCode::Domain, "non-integer power of a negative value");
        }
        if (p == 0.5) return checked(std::sqrt(*b), "sqrt");
        if (p == -1.0) return checked(1.0 / *b, "reciprocal");
        return checked(std::pow(*b, p), "power");
      }
      default:
        break;
    }
    auto a = (*this)(e.arg());
    if (!a) return a;
    const double x = *a;
    switch (e.op()) {
      case Op::Exp: return checked(std::exp(x), "exp");
      case Op::Ln:
        if (x <= 0.0) return make_error(ErrorCode::Domain, "ln of a non-positive value");
        return std::log(x);
      case Op::Sin: return std::sin(x);
      case Op::Cos: return std::cos(x);
      case Op::Tan: return checked(std::tan(x), "tan");
      case Op::Sinh: return checked(std::sinh(x), "sinh");
      case Op::Cosh: return checked(std::cosh(x), "cosh");
      case Op::Tanh: return std::tanh(x);
      case Op::Sech: return std::abs(x) > 700.0 ? 0.0 : 1.0 / std::cosh(x);
      default: break;
    }
    return make_error(ErrorCode::Domain, "unsupported node");
  }
};

}  // namespace

Expected<double> eval(const Expr& e, const Bindings& bindings) { return Evaluator{bindings}(e); }

Expected<double> eval(const Expr& e, std::string_view var, double x) {
  Bindings b;
  b.set(var, x);
  return eval(e, b);
}

bool depends_on(const Expr& e, std::string_view var) {
  if (e.op() == Op::Variable) return e.name() == var;
  for (const auto& a : e.args()) {
    if (depends_on(a, var)) return true;
  }
  return false;
}

namespace {

Expr diff_raw(const Expr& e, std::string_view var) {
  if (!depends_on(e, var)) return Expr::constant(0.0);
  switch (e.op()) {
    case Op::Constant: return Expr::constant(0.0);
    case Op::Variable: return Expr::constant(e.name() == var ? 1.0 : 0.0);
    case Op::Add: {
      std::vector<Expr> terms;
      for (const auto& t : e.args()) terms.push_back(diff_raw(t, var));
      return Expr::add(std::move(terms));
    }
    case Op::Mul: {
      std::vector<Expr> terms;
      const auto factors = e.args();
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!depends_on(factors[i], var)) continue;
        std::vector<Expr> prod(factors.begin(), factors.end());
        prod[i] = diff_raw(factors[i], var);
        terms.push_back(Expr::mul(std::move(prod)));
      }
      return Expr::add(std::move(terms));
    }
    case Op::Pow: {
      const double p = e.exponent();
      return Expr::mul({Expr::constant(p), Expr::pow(e.arg(), p - 1.0), diff_raw(e.arg(), var)});
    }
    default: break;
  }
  const Expr& a = e.arg();
  const Expr da = diff_raw(a, var);
  switch (e.op()) {
    case Op::Exp: return Expr::mul({e, da});
    case Op::Ln: return Expr::mul({da, Expr::pow(a, -1.0)});
    case Op::Sin: return Expr::mul({cos(a), da});
    case Op::Cos: return Expr::mul({Expr::constant(-1.0), sin(a), da});
    case Op::Tan: return Expr::mul({Expr::pow(cos(a), -2.0), da});
    case Op::Sinh: return Expr::mul({cosh(a), da});
    case Op::Cosh: return Expr::mul({sinh(a), da});
    case Op::Tanh: return Expr::mul({Expr::pow(sech(a), 2.0), da});
    case Op::Sech: return Expr::mul({Expr::constant(-1.0), e, tanh(a), da});
    default: break;
  }
  return Expr::constant(0.0);
}

}  // namespace

Expr diff(const Expr& e, std::string_view var) { return simplify(diff_raw(e, var)); }

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement) {
  switch (e.op()) {
    case Op::Constant: return e;
    case Op::Variable: return e.name() == var ? replacement : e;
    case Op::Add:
    case Op::Mul: {
      std::vector<Expr> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(substitute(a, var, replacement));
      return e.op() == Op::Add ? Expr::add(std::move(args)) : Expr::mul(std::move(args));
    }
    case Op::Pow: return Expr::pow(substitute(e.arg(), var, replacement), e.exponent());
    default: return Expr::apply(e.op(), substitute(e.arg(), var, replacement));
  }
}

int compare(const Expr& a, const Expr& b) {
  if (a.op() != b.op()) return static_cast<int>(a.op()) < static_cast<int>(b.op()) ? -1 : 1;
  switch (a.op()) {
    case Op::Constant:
      if (a.value() == b.value()) return 0;
      return a.value() < b.value() ? -1 : 1;
    case Op::Variable: {
      const int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Op::Pow:
      if (a.exponent() != b.exponent()) {
        const int c = compare(a.arg(), b.arg());
        if (c != 0) return c;
        return a.exponent() < b.exponent() ? -1 : 1;
      }
      break;
    default:
      break;
  }
  const auto aa = a.args();
  const auto bb = b.args();
  if (aa.size() != bb.size()) return aa.size() < bb.size() ? -1 : 1;
  for (std::size_t i = 0; i < aa.size(); ++i) {
    const int c = compare(aa[i], bb[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& a : e.args()) n += node_count(a);
  return n;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v + 0.0);  // %g would print 10 as 1e+01
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

// Binding strength used to decide parenthesization.
int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add: return 1;
    case Op::Mul: return 2;
    case Op::Constant: return e.value() < 0.0 ? 2 : 5;
    case Op::Pow: return 3;
    default: return 5;
  }
}

std::string print(const Expr& e);

std::string wrap_if(const Expr& e, bool wrap) {
  std::string s = print(e);
  return wrap ? "(" + s + ")" : s;
}

// Splits a leading negative constant off a product so sums print as a - b.
bool negated_term(const Expr& t, Expr& positive) {
  if (t.op() == Op::Constant && t.value() < 0.0) {
    positive = Expr::constant(-t.value());
    return true;
  }
  if (t.op() == Op::Mul && t.arg(0).op() == Op::Constant && t.arg(0).value() < 0.0) {
    std::vector<Expr> f(t.args().begin(), t.args().end());
    if (f[0].value() == -1.0) {
      f.erase(f.begin());
    } else {
      f[0] = Expr::constant(-f[0].value());
    }
    positive = Expr::mul(std::move(f));
    return true;
  }
  return false;
}

std::string print(const Expr& e) {
  switch (e.op()) {
    case Op::Constant: return format_number(e.value());
    case Op::Variable: return e.name();
    case Op::Add: {
      std::string out;
      bool first = true;
      for (const auto& t : e.args()) {
        Expr pos;
        if (!first && negated_term(t, pos)) {
          out += " - " + wrap_if(pos, precedence(pos) <= 1);
        } else {
          if (!first) out += " + ";
          out += wrap_if(t, precedence(t) <= 1 || (!first && precedence(t) == 2 && t.is_constant()));
        }
        first = false;
      }
      return out;
    }
    case Op::Mul: {
      std::string out;
      bool first = true;
      auto factors = e.args();
      if (factors.size() > 1 && factors[0].is_constant(-1.0)) {
        out = "-";
        factors = factors.subspan(1);
      }
      for (const auto& f : factors) {
        if (!first) out += "*";
        out += wrap_if(f, precedence(f) <= 1 || (!first && f.is_constant() && f.value() < 0.0));
        first = false;
      }
      return out;
    }
    case Op::Pow: {
      const Expr& b = e.arg();
      const bool wrap_base = precedence(b) <= 3;
      std::string exponent = format_number(e.exponent());
      if (e.exponent() < 0.0 || !is_integer(e.exponent())) exponent = "(" + exponent + ")";
      return wrap_if(b, wrap_base) + "^" + exponent;
    }
    default:
      return std::string(op_name(e.op())) + "(" + print(e.arg()) + ")";
  }
}

}  // namespace

std::string to_string(const Expr& e) { return print(e); }

}  // namespace solvagen::expr
