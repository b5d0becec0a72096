#pragma once

// Checks shared by the unit tests and the acceptance binary. They combine
// library output with the finite-difference oracles in oracles.hpp.

#include <algorithm>
#include <cmath>
#include <optional>

#include "oracles.hpp"
#include "solvagen/catalog.hpp"
#include "solvagen/transform.hpp"

namespace check {

namespace ex = solvagen::expr;

inline std::optional<double> at(const ex::Expr& e, double r) {
  auto v = ex::eval(e, "r", r);
  if (!v || !std::isfinite(*v)) return std::nullopt;
  return *v;
}

struct Deviation {
  double max = 0.0;
  int points = 0;
};

// Transformed-equation identity: psi from the wavefunction template must satisfy
// psi'' + (D-1)/r psi' = rhs psi with rhs from effective_rhs. Derivatives are
// Richardson finite differences; the deviation is scaled by
// |psi''| + |(D-1)/r psi'| + |rhs psi| so that nodes do not blow it up.
// Points are spread over the r > 0 part of the state's domain where psi is
// not negligible.
inline std::optional<Deviation> central_identity(const solvagen::catalog::QuantumSystem& sys, int index,
                                                 int points = 100) {
  namespace tr = solvagen::transform;
  auto fam = sys.family(index);
  auto map = sys.mapping(index);
  auto dom = sys.domain(index);
  if (!fam || !map || !dom) return std::nullopt;
  auto psi = tr::wavefunction_template(*fam, *map, sys.D);
  auto rhs = tr::effective_rhs(*fam, *map, sys.D);
  if (!psi || !rhs) return std::nullopt;

  // Restrict to where |psi| > 1e-8 max|psi|: far out the mapping saturates
  // in double precision (tanh -> 1) and the template is rounding noise.
  const double r0 = std::max(dom->lo, 0.0);
  const double r1 = dom->hi;
  constexpr int kScan = 4000;
  double peak = 0.0;
  for (int i = 1; i < kScan; ++i) peak = std::max(peak, std::abs(at(*psi, r0 + (r1 - r0) * i / kScan).value_or(0.0)));
  double lo = r1;
  double hi = r0;
  for (int i = 1; i < kScan; ++i) {
    const double r = r0 + (r1 - r0) * i / kScan;
    if (std::abs(at(*psi, r).value_or(0.0)) > 1e-8 * peak) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  if (!(hi > lo)) return std::nullopt;
  const double step = (hi - lo) / (points + 1);
  // Richardson truncation falls as h^4 but rounding grows as 1/h^2, so the
  // step follows the width of the region psi lives in.
  const double h = std::clamp(1e-3 * (hi - lo), 1e-3, step / 8);
  Deviation d;
  bool defined = true;
  oracle::Fn f = [&](double r) {
    auto v = at(*psi, r);
    if (!v) defined = false;
    return v.value_or(0.0);
  };
  for (int i = 1; i <= points; ++i) {
    const double r = lo + i * step;
    defined = true;
    const double p = f(r);
    const double p1 = oracle::d1_rich(f, r, h);
    const double p2 = oracle::d2_rich(f, r, h);
    auto q = at(*rhs, r);
    if (!defined || !q) continue;
    const double drift = (sys.D - 1) / r * p1;
    const double scale = std::abs(p2) + std::abs(drift) + std::abs(*q * p);
    if (!(scale > 0.0) || !std::isfinite(scale)) continue;
    d.max = std::max(d.max, std::abs(p2 + drift - *q * p) / scale);
    ++d.points;
  }
  return d;
}

// Symbolic Schwartzian against the Richardson oracle on [lo, hi]; deviation
// relative to max(1, |S|).
inline std::optional<Deviation> schwartzian(const ex::Expr& g, double lo, double hi, int points = 50) {
  auto S = solvagen::transform::schwartzian(g, "r");
  if (!S) return std::nullopt;
  oracle::Fn f = [&](double r) { return at(g, r).value_or(std::nan("")); };
  Deviation d;
  for (int i = 0; i < points; ++i) {
    const double r = lo + (hi - lo) * i / (points - 1);
    auto sym = at(*S, r);
    const double fd = oracle::schwartzian(f, r);
    if (!sym || !std::isfinite(fd)) continue;
    d.max = std::max(d.max, std::abs(*sym - fd) / std::max(1.0, std::abs(*sym)));
    ++d.points;
  }
  return d;
}

// Solves a r1^p + C / r1^2 = v1, a r2^p + C / r2^2 = v2 for C: the inverse
// square coefficient of a function known to be a*r^p + C/r^2.
inline double inverse_square_from_two_points(double r1, double v1, double r2, double v2, double p) {
  const double a11 = std::pow(r1, p), a12 = 1 / (r1 * r1);
  const double a21 = std::pow(r2, p), a22 = 1 / (r2 * r2);
  return (a11 * v2 - a21 * v1) / (a11 * a22 - a21 * a12);
}

}  // namespace check
