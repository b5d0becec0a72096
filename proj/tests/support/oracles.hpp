#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library except to build expressions for the random generator.

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "solvagen/expr.hpp"

namespace oracle {

using Fn = std::function<double(double)>;

// Central differences; the Richardson versions combine steps h and h/2.
inline double d1(const Fn& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}
inline double d2(const Fn& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}
inline double d3(const Fn& f, double x, double h) {
  return (-f(x - 2 * h) + 2 * f(x - h) - 2 * f(x + h) + f(x + 2 * h)) / (2 * h * h * h);
}
inline double d1_rich(const Fn& f, double x, double h) { return (16 * d1(f, x, h / 2) - d1(f, x, h)) / 15; }
inline double d2_rich(const Fn& f, double x, double h) { return (16 * d2(f, x, h / 2) - d2(f, x, h)) / 15; }
inline double d3_rich(const Fn& f, double x, double h) { return (4 * d3(f, x, h / 2) - d3(f, x, h)) / 3; }

// A second Richardson level over h, h/2, h/4 removes the next error term too.
inline double d1_rich2(const Fn& f, double x, double h) { return (64 * d1_rich(f, x, h / 2) - d1_rich(f, x, h)) / 63; }
inline double d2_rich2(const Fn& f, double x, double h) { return (64 * d2_rich(f, x, h / 2) - d2_rich(f, x, h)) / 63; }
inline double d3_rich2(const Fn& f, double x, double h) { return (16 * d3_rich(f, x, h / 2) - d3_rich(f, x, h)) / 15; }

// g'''/g' - 3/2 (g''/g')^2 from finite differences of g. One Richardson level
// at h = 1e-2 leaves ~3e-6 on maps like 1/(r + 0.46); two levels at 2e-2 stay
// near 1e-8 without pushing the third difference into rounding.
inline double schwartzian(const Fn& g, double x, double h = 2e-2) {
  const double a = d1_rich2(g, x, h);
  const double b = d2_rich2(g, x, h);
  const double c = d3_rich2(g, x, h);
  return c / a - 1.5 * (b / a) * (b / a);
}

// Composite Simpson with `intervals` (made even) panels.
inline double simpson(const Fn& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3;
}

// The explicit sums alternate in sign and cancel heavily (L_8 at x = 12 loses
// ~5 digits), so they are accumulated in long double.
using Wide = long double;

// Generalized binomial C(z, k) for integer k >= 0.
inline Wide binom(Wide z, int k) {
  Wide c = 1.0L;
  for (int j = 1; j <= k; ++j) c *= (z - k + j) / j;
  return c;
}

inline Wide factorial(int k) {
  Wide f = 1.0L;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

// L_n^a(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!
inline double laguerre_series(int n, double a, double x) {
  Wide s = 0.0L;
  for (int k = 0; k <= n; ++k) {
    s += (k % 2 ? -1.0L : 1.0L) * binom(Wide(n) + a, n - k) * std::pow(Wide(x), k) / factorial(k);
  }
  return static_cast<double>(s);
}

// 2F1(-n, b; c; x) as the terminating Pochhammer sum.
inline double hyp2f1_series(int n, double b, double c, double x) {
  Wide term = 1.0L;
  Wide s = 1.0L;
  for (int k = 0; k < n; ++k) {
    term *= (Wide(-n) + k) * (Wide(b) + k) / ((Wide(c) + k) * (k + 1.0L)) * x;
    s += term;
  }
  return static_cast<double>(s);
}

// P_n^{(a,b)}(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
inline double jacobi_series(int n, double a, double b, double x) {
  Wide s = 0.0L;
  const Wide lo = (Wide(x) - 1) / 2;
  const Wide hi = (Wide(x) + 1) / 2;
  for (int k = 0; k <= n; ++k) {
    s += binom(Wide(n) + a, n - k) * binom(Wide(n) + b, k) * std::pow(lo, k) * std::pow(hi, n - k);
  }
  return static_cast<double>(s);
}

// P_n^m(x) = (-1)^m (1-x^2)^{m/2} d^m/dx^m P_n(x), with P_n from the explicit
// sum 2^-n sum_k (-1)^k C(n,k) C(2n-2k, n) x^(n-2k). m >= 0.
inline double legendre_series(int n, int m, double x) {
  Wide s = 0.0L;
  for (int k = 0; 2 * k <= n; ++k) {
    const int p = n - 2 * k;
    if (p < m) continue;
    Wide falling = 1.0L;  // p (p-1) ... (p-m+1)
    for (int j = 0; j < m; ++j) falling *= p - j;
    s += (k % 2 ? -1.0L : 1.0L) * binom(n, k) * binom(2 * n - 2 * k, n) * falling * std::pow(Wide(x), p - m);
  }
  s /= std::pow(2.0L, n);
  return static_cast<double>((m % 2 ? -1.0L : 1.0L) * std::pow(1 - Wide(x) * x, m / 2.0L) * s);
}

// Random g(r) that is smooth and strictly monotone on [0.1, 2] with
// |g'| bounded away from zero, so its Schwartzian is well conditioned there.
inline std::string random_mapping(std::mt19937& rng, int which) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double lo, double hi) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", lo + (hi - lo) * u(rng));
    return std::string(buf);
  };
  switch (which % 8) {
    case 0: return in(0.5, 2) + "*exp(" + in(0.2, 1.5) + "*r) + " + in(0.1, 1) + "*r";
    case 1: {
      const double b = 0.5 + 2.5 * u(rng);
      const double a = (0.1 + 0.4 * u(rng)) / b;
      char buf[64];
      std::snprintf(buf, sizeof buf, "r + %.6g*sin(%.6g*r)", a, b);
      return buf;
    }
    case 2: return "(" + in(0.5, 2) + "*r^2 - " + in(0.01, 1) + ")/(r + " + in(0.5, 2) + ")";
    case 3: return "tanh(" + in(0.5, 2) + "*r) + " + in(0.1, 1) + "*r";
    case 4: return in(0.1, 1) + "*r^3 + " + in(0.2, 1) + "*r + ln(r + " + in(0.2, 1) + ")";
    case 5: return "1/(r + " + in(0.2, 2) + ") - " + in(0.1, 1) + "*r";
    case 6: return "cosh(" + in(0.3, 2) + "*r) + " + in(0.2, 1) + "*r";
    default: return "sqrt(r + " + in(0.1, 1) + ")*exp(" + in(0.1, 0.8) + "*r)";
  }
}

// Random expression tree in r built from the node set, for algebraic
// property tests. Depth-limited; leaves are r or small constants.
inline solvagen::expr::Expr random_expr(std::mt19937& rng, int depth) {
  using solvagen::expr::Expr;
  namespace ex = solvagen::expr;
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  const Expr r = Expr::variable("r");
  if (depth <= 0) return pick(rng) < 6 ? r : Expr::constant(std::round(c(rng) * 4) / 4);
  const Expr a = random_expr(rng, depth - 1);
  switch (pick(rng)) {
    case 0: return a + random_expr(rng, depth - 1);
    case 1: return a * random_expr(rng, depth - 1);
    case 2: return a - random_expr(rng, depth - 1);
    case 3: return ex::pow(a, std::round(c(rng) * 2) / 2 + (c(rng) > 0 ? 2.0 : 1.0));
    case 4: return ex::exp(Expr::constant(0.3) * a);
    case 5: return ex::sin(a);
    case 6: return ex::cos(a);
    case 7: return ex::tanh(a);
    case 8: return a / (Expr::constant(3.0) + ex::pow(random_expr(rng, depth - 1), 2.0));
    default: return ex::sech(a);
  }
}

}  // namespace oracle
