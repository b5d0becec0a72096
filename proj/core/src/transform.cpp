#include "solvagen/transform.hpp"

#include <array>
#include <cstdio>
#include <optional>
#include <cmath>
#include <numbers>
#include <vector>

namespace solvagen::transform {

using expr::Expr;

namespace {

constexpr int kSamples = 50;

const Expr& r_var() {
  static const Expr r = Expr::variable("r");
  return r;
}

Expr relation_lhs(Relation relation, const Expr& g, const Expr& g1, const Expr& g2) {
  switch (relation) {
    case Relation::PowerOverSquare: return expr::pow(g1 / g, 2.0);
    case Relation::PowerOverG: return expr::pow(g1, 2.0) / g;
    case Relation::PowerPlain: return expr::pow(g1, 2.0);
    case Relation::SecondDeriv: return expr::pow(g2 / g1, 2.0);
    case Relation::OneMinusG2: return expr::pow(g1, 2.0) / (1.0 - g * g);
    case Relation::OneMinusG2Sq: return expr::pow(g1 / (1.0 - g * g), 2.0);
    case Relation::OneMinusG: return expr::pow(g1 / (1.0 - g), 2.0);
  }
  return Expr();
}

// Points of (lo, hi) clustered toward lo, never touching either end.
std::array<double, kSamples> sample_points(double lo, double hi) {
  std::array<double, kSamples> pts{};
  for (int i = 0; i < kSamples; ++i) {
    const double t = std::pow(10.0, -3.0 + 3.0 * i / (kSamples - 1));
    pts[i] = lo + (hi - lo) * 0.999 * t;
  }
  return pts;
}

// 1 -+ tanh(u) cancels once tanh has saturated; the equal 2/(1 + exp(+-2u))
// keeps full relative precision. Applied to the weight factors of a template.
Expr without_tanh_cancellation(const Expr& e) {
  std::vector<Expr> kids;
  for (const Expr& a : e.args()) kids.push_back(without_tanh_cancellation(a));
  switch (e.op()) {
    case expr::Op::Constant:
    case expr::Op::Variable: return e;
    case expr::Op::Mul: return Expr::mul(std::move(kids));
    case expr::Op::Pow: return Expr::pow(kids[0], e.exponent());
    case expr::Op::Add: break;
    default: return Expr::apply(e.op(), kids[0]);
  }
  if (kids.size() == 2) {
    const Expr* k = kids[0].is_constant() ? &kids[0] : kids[1].is_constant() ? &kids[1] : nullptr;
    const Expr& t = k == &kids[0] ? kids[1] : kids[0];
    double c = 1.0;
    const Expr* th = nullptr;
    if (t.op() == expr::Op::Tanh) {
      th = &t;
    } else if (t.op() == expr::Op::Mul && t.args().size() == 2 && t.arg(0).is_constant() &&
               t.arg(1).op() == expr::Op::Tanh) {
      c = t.arg(0).value();
      th = &t.arg(1);
    }
    if (k && th && k->value() != 0.0 && std::abs(c) == std::abs(k->value())) {
      const double sign = c == -k->value() ? 2.0 : -2.0;
      return 2.0 * k->value() * expr::pow(1.0 + expr::exp(sign * th->arg()), -1.0);
    }
  }
  return Expr::add(std::move(kids));
}

std::optional<Error> check_range(const polys::PolynomialFamily& fam, const Mapping& map) {
  const auto dom = polys::natural_domain(fam);
  for (double r : sample_points(map.lo, map.hi)) {
    auto g = expr::eval(map.g, "r", r);
    if (!g) return g.error();
    // Closed test: exp and tanh saturate to the endpoint in double precision.
    if (!(*g >= dom.lo && *g <= dom.hi)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "g(%.6g) = %.6g lies outside the natural domain (%g, %g) of %s", r, *g, dom.lo,
                    dom.hi, fam.describe().c_str());
      return make_error(ErrorCode::Domain, buf);
    }
  }
  return std::nullopt;
}

std::optional<Error> check_inputs(const polys::PolynomialFamily& fam, const Mapping& map, int D) {
  if (D < 1) return make_error(ErrorCode::InvalidParameter, "dimension must be >= 1");
  return check_range(fam, map);
}

Expr background(int D) {
  return Expr::constant((D - 1.0) * (D - 3.0) / 4.0) * expr::pow(r_var(), -2.0);
}

// |g'|^{1/2} as (g'^2)^{1/4}; g' may be negative.
Expr sqrt_abs_derivative(const Expr& g) { return expr::pow(expr::pow(expr::diff(g, "r"), 2.0), 0.25); }

}  // namespace

const char* relation_name(Relation relation) {
  switch (relation) {
    case Relation::PowerOverSquare: return "power_over_square";
    case Relation::PowerOverG: return "power_over_g";
    case Relation::PowerPlain: return "power_plain";
    case Relation::SecondDeriv: return "second_derivative";
    case Relation::OneMinusG2: return "one_minus_g2";
    case Relation::OneMinusG2Sq: return "one_minus_g2_squared";
    case Relation::OneMinusG: return "one_minus_g";
  }
  return "?";
}

std::optional<Relation> relation_from_name(std::string_view name) {
  for (Relation r : {Relation::PowerOverSquare, Relation::PowerOverG, Relation::PowerPlain, Relation::SecondDeriv,
                     Relation::OneMinusG2, Relation::OneMinusG2Sq, Relation::OneMinusG}) {
    if (name == relation_name(r)) return r;
  }
  return std::nullopt;
}

Expected<Mapping> make_mapping(Relation relation, double c, double A) {
  if (!(c > 0.0) || !std::isfinite(c)) return make_error(ErrorCode::InvalidParameter, "mapping constant c must be > 0");
  if (!std::isfinite(A) || A == 0.0) return make_error(ErrorCode::InvalidParameter, "mapping scale A must be nonzero");
  const Expr& r = r_var();
  Mapping m;
  m.relation = relation;
  m.c = c;
  m.A = A;
  switch (relation) {
    case Relation::PowerOverSquare:
    case Relation::SecondDeriv:
      m.g = A * expr::exp(-c * r);
      m.lo = 0.0;
      m.hi = 10.0 / c;
      break;
    case Relation::PowerOverG:
      m.g = (c * c / 4.0) * expr::pow(r, 2.0);
      m.lo = 0.0;
      m.hi = 10.0 / c;
      break;
    case Relation::PowerPlain:
      m.g = c * r;
      m.lo = 0.0;
      m.hi = 10.0 / c;
      break;
    case Relation::OneMinusG2:
      m.g = expr::sin(c * r);
      m.lo = -std::numbers::pi / (2.0 * c);
      m.hi = std::numbers::pi / (2.0 * c);
      break;
    case Relation::OneMinusG2Sq:
      m.g = expr::tanh(c * r);
      // 1 - tanh^2 underflows the relation check much further out
      m.lo = -4.0 / c;
      m.hi = 4.0 / c;
      break;
    case Relation::OneMinusG:
      m.g = 1.0 - A * expr::exp(-c * r);
      m.lo = 0.0;
      m.hi = 10.0 / c;
      break;
  }
  m.g = expr::simplify(m.g);
  return m;
}

MappingCheck verify_mapping(const Mapping& map) {
  const Expr g1 = expr::diff(map.g, "r");
  const Expr g2 = expr::diff(g1, "r");
  const Expr lhs = relation_lhs(map.relation, map.g, g1, g2);
  const double target = map.c * map.c;
  double worst = 0.0;
  for (double r : sample_points(map.lo, map.hi)) {
    auto v = expr::eval(lhs, "r", r);
    if (!v) return {false, HUGE_VAL};
    worst = std::max(worst, std::abs(*v - target));
  }
  return {worst < 1e-9 * target, worst};
}

Expected<Expr> schwartzian(const Expr& g, std::string_view var) {
  const Expr g1 = expr::diff(g, var);
  if (g1.is_constant(0.0)) return make_error(ErrorCode::Domain, "g' is identically zero");
  const Expr g2 = expr::diff(g1, var);
  const Expr g3 = expr::diff(g2, var);
  return expr::simplify(g3 / g1 - 1.5 * expr::pow(g2 / g1, 2.0));
}

Expected<Expr> modulating_function(const polys::PolynomialFamily& fam, const Mapping& map, int D) {
  if (auto err = check_inputs(fam, map, D)) return *err;
  const Expr weight = expr::substitute(polys::half_weight(fam, "g"), "g", map.g);
  Expr f = sqrt_abs_derivative(map.g) / weight;
  if (D != 1) f = expr::pow(r_var(), 0.5 * (D - 1)) * f;
  return expr::simplify(without_tanh_cancellation(expr::simplify(f)));
}

Expected<Expr> effective_rhs(const polys::PolynomialFamily& fam, const Mapping& map, int D) {
  if (auto err = check_inputs(fam, map, D)) return *err;
  SOLVAGEN_TRY(schw, schwartzian(map.g));
  const auto ch = polys::characteristic(fam, "g");
  const Expr invariant = (expr::pow(ch.M, 2.0) + 2.0 * expr::diff(ch.M, "g") - 4.0 * ch.J) / 4.0;
  const Expr g1 = expr::diff(map.g, "r");
  Expr rhs = expr::pow(g1, 2.0) * expr::substitute(invariant, "g", map.g) - 0.5 * schw;
  if (D != 1 && D != 3) rhs = rhs - background(D);
  return expr::simplify(rhs);
}

Expected<Expr> wavefunction_template(const polys::PolynomialFamily& fam, const Mapping& map, int D) {
  if (auto err = check_inputs(fam, map, D)) return *err;
  const Expr weight = expr::substitute(polys::half_weight(fam, "g"), "g", map.g);
  const Expr q = expr::substitute(polys::polynomial_expr(fam, "g"), "g", map.g);
  Expr psi = weight * q / sqrt_abs_derivative(map.g);
  if (D != 1) psi = expr::pow(r_var(), -0.5 * (D - 1)) * psi;
  return expr::simplify(without_tanh_cancellation(expr::simplify(psi)));
}

Expected<TransformResult> apply(const polys::PolynomialFamily& fam, const Mapping& map, int D) {
  SOLVAGEN_TRY(f, modulating_function(fam, map, D));
  SOLVAGEN_TRY(rhs, effective_rhs(fam, map, D));
  SOLVAGEN_TRY(psi, wavefunction_template(fam, map, D));
  return TransformResult{std::move(f), std::move(rhs), std::move(psi)};
}

}  // namespace solvagen::transform
