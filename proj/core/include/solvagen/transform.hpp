#pragma once

// Change of variable r -> g(r) plus the rescaling psi = f^{-1} Q(g) that turns
// a polynomial ODE  Q'' + M Q' + J Q = 0  into a D-dimensional radial
// Schrodinger equation. Everything here is symbolic in the variable "r".

#include <optional>
#include <string>
#include <string_view>

#include "solvagen/expected.hpp"
#include "solvagen/expr.hpp"
#include "solvagen/polys.hpp"

namespace solvagen::transform {

// Constraint relation a mapping satisfies, written as lhs(g) = c^2.
enum class Relation {
  PowerOverSquare,  // g'^2 / g^2
  PowerOverG,       // g'^2 / g
  PowerPlain,       // g'^2
  SecondDeriv,      // g''^2 / g'^2
  OneMinusG2,       // g'^2 / (1 - g^2)
  OneMinusG2Sq,     // g'^2 / (1 - g^2)^2
  OneMinusG,        // g'^2 / (1 - g)^2
};

const char* relation_name(Relation relation);
std::optional<Relation> relation_from_name(std::string_view name);

struct Mapping {
  expr::Expr g;
  Relation relation = Relation::PowerOverSquare;
  double c = 1.0;
  double A = 1.0;
  // Interval of r on which the mapping is sampled and checked.
  double lo = 0.0;
  double hi = 1.0;
};

// The cataloged closed-form solution of each relation:
//   PowerOverSquare, SecondDeriv   A exp(-c r)
//   PowerOverG                     c^2 r^2 / 4
//   PowerPlain                     c r
//   OneMinusG2                     sin(c r)
//   OneMinusG2Sq                   tanh(c r)
//   OneMinusG                      1 - A exp(-c r)
// A is ignored by the power-law and trigonometric forms.
Expected<Mapping> make_mapping(Relation relation, double c, double A = 1.0);

struct MappingCheck {
  bool ok;
  double max_deviation;
};

// |lhs(r) - c^2| at 50 log-spaced points of (lo, hi); ok iff below 1e-9 c^2.
MappingCheck verify_mapping(const Mapping& map);

// g'''/g' - (3/2)(g''/g')^2, simplified.
Expected<expr::Expr> schwartzian(const expr::Expr& g, std::string_view var = "r");

// r^{(D-1)/2} |g'|^{1/2} exp(-1/2 int M dg).
Expected<expr::Expr> modulating_function(const polys::PolynomialFamily& fam, const Mapping& map, int D);

// g'^2 (M^2 + 2 M' - 4 J)/4 - {g,r}/2 - (D-1)(D-3)/(4 r^2), which equals
// V(r) + l(l+D-2)/r^2 - E for a system built from this family and mapping.
Expected<expr::Expr> effective_rhs(const polys::PolynomialFamily& fam, const Mapping& map, int D);

// r^{-(D-1)/2} |g'|^{-1/2} exp(1/2 int M dg) Q(g(r)), unnormalized.
Expected<expr::Expr> wavefunction_template(const polys::PolynomialFamily& fam, const Mapping& map, int D);

struct TransformResult {
  expr::Expr f;
  expr::Expr rhs;
  expr::Expr psi_template;
};

Expected<TransformResult> apply(const polys::PolynomialFamily& fam, const Mapping& map, int D);

}  // namespace solvagen::transform
