#pragma once

// Minimal single-variable computer algebra: an immutable expression tree with
// parsing, printing, evaluation, differentiation, substitution and a
// best-effort, value-preserving simplifier.
//
// Grammar accepted by parse() (see docs/expression-grammar.md):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | identifier | identifier '(' expr ')' | '(' expr ')'
//
// Functions: exp ln log sin cos tan sec sinh cosh tanh sech sqrt.
// Named constants: pi, e.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solvagen/expected.hpp"

namespace solvagen::expr {

enum class Op {
  Constant,
  Variable,
  Add,
  Mul,
  Pow,
  Exp,
  Ln,
  Sin,
  Cos,
  Tan,
  Sinh,
  Cosh,
  Tanh,
  Sech,
};

const char* op_name(Op op);
bool is_function(Op op);

class Expr {
 public:
  Expr();  // the constant 0
  Expr(double value);  // NOLINT: implicit so that `2.0 * r` reads naturally

  static Expr constant(double value);
  static Expr variable(std::string name);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  // Constant exponents only; general powers go through exp(q*ln(base)).
  static Expr pow(Expr base, double exponent);
  static Expr apply(Op function, Expr argument);

  Op op() const;
  double value() const;             // Constant
  const std::string& name() const;  // Variable
  double exponent() const;          // Pow
  std::span<const Expr> args() const;
  const Expr& arg(std::size_t i = 0) const { return args()[i]; }

  bool is_constant() const { return op() == Op::Constant; }
  bool is_constant(double v) const { return is_constant() && value() == v; }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr pow(const Expr& base, double exponent);
Expr sqrt(const Expr& a);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr tanh(const Expr& a);
Expr sech(const Expr& a);

// Variable bindings for evaluation. Small and flat: expressions here have a
// handful of free symbols at most.
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::initializer_list<std::pair<std::string, double>> init);

  Bindings& set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

// Domain problems (ln of a non-positive value, a pole, a non-finite result)
// come back as ErrorCode::Domain; an unbound variable as UnboundVariable.
Expected<double> eval(const Expr& e, const Bindings& bindings);
Expected<double> eval(const Expr& e, std::string_view var, double x);

Expr diff(const Expr& e, std::string_view var);
Expr simplify(const Expr& e);
Expr substitute(const Expr& e, std::string_view var, const Expr& replacement);
bool depends_on(const Expr& e, std::string_view var);

// Total structural order; 0 means tree-equal.
int compare(const Expr& a, const Expr& b);
inline bool tree_equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
std::size_t node_count(const Expr& e);

// Parseable text; constants are printed with round-trip precision.
std::string to_string(const Expr& e);

struct ParseOptions {
  // When set, bare identifiers outside this list are rejected.
  std::optional<std::vector<std::string>> allowed_variables;
};

Expected<Expr> parse(std::string_view text, const ParseOptions& options = {});

}  // namespace solvagen::expr
