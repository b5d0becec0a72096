#pragma once

// The four orthogonal-polynomial families used by the transformation engine,
// evaluated numerically and exposed symbolically through the coefficient
// functions of their defining equation  Q'' + M(g) Q' + J(g) Q = 0.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "solvagen/expected.hpp"
#include "solvagen/expr.hpp"

namespace solvagen::polys {

// L_n^alpha(x).
struct AssociatedLaguerre {
  int n;
  double alpha;
};

// 2F1(-n, beta; gamma; x), a polynomial of degree n.
struct Hypergeometric2F1 {
  int n;
  double beta;
  double gamma;
};

// P_n^m(x) with the Condon-Shortley phase (-1)^m.
struct AssociatedLegendre {
  int n;
  int m;
};

// P_n^(alpha,beta)(x).
struct Jacobi {
  int n;
  double alpha;
  double beta;
};

enum class FamilyKind { AssociatedLaguerre, Hypergeometric2F1, AssociatedLegendre, Jacobi };

const char* kind_name(FamilyKind kind);

class PolynomialFamily {
 public:
  using Variant = std::variant<AssociatedLaguerre, Hypergeometric2F1, AssociatedLegendre, Jacobi>;

  // Validating constructors; every PolynomialFamily in existence is valid.
  static Expected<PolynomialFamily> make(Variant v);
  static Expected<PolynomialFamily> laguerre(int n, double alpha) { return make(AssociatedLaguerre{n, alpha}); }
  static Expected<PolynomialFamily> hypergeometric(int n, double beta, double gamma) {
    return make(Hypergeometric2F1{n, beta, gamma});
  }
  static Expected<PolynomialFamily> legendre(int n, int m) { return make(AssociatedLegendre{n, m}); }
  static Expected<PolynomialFamily> jacobi(int n, double alpha, double beta) { return make(Jacobi{n, alpha, beta}); }

  FamilyKind kind() const;
  int degree() const;
  const Variant& variant() const { return v_; }
  std::string describe() const;

 private:
  explicit PolynomialFamily(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Three-term recurrence in the degree for every family (for 2F1 the
// contiguous relation in its first parameter).
Expected<double> eval_poly(const PolynomialFamily& fam, double x);

// Q(x), Q'(x), Q''(x) evaluated from exact coefficient arrays.
struct Derivatives {
  double value;
  double first;
  double second;
};
Expected<Derivatives> eval_with_derivatives(const PolynomialFamily& fam, double x);

// Monomial coefficients c_k of the polynomial part, lowest degree first.
// For AssociatedLegendre this is the factor multiplying (1 - x^2)^(|m|/2);
// phase and the negative-m normalization are folded into the coefficients.
std::vector<double> coefficients(const PolynomialFamily& fam);

struct Characteristic {
  expr::Expr M;
  expr::Expr J;
};

Characteristic characteristic(const PolynomialFamily& fam, std::string_view var = "g");

// Closed-form antiderivative of M with zero integration constant.
expr::Expr integral_of_M(const PolynomialFamily& fam, std::string_view var = "g");

// exp(+1/2 * integral of M) written as a product of powers.
expr::Expr half_weight(const PolynomialFamily& fam, std::string_view var = "g");

// Q as an expression in `var`.
expr::Expr polynomial_expr(const PolynomialFamily& fam, std::string_view var = "g");

// Open interval on which M and J are regular.
struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return x > lo && x < hi; }
};
Interval natural_domain(const PolynomialFamily& fam);

// |Q'' + M Q' + J Q| scaled by max(1, |Q''| + |M Q'| + |J Q|).
Expected<double> ode_residual(const PolynomialFamily& fam, double x);

}  // namespace solvagen::polys
