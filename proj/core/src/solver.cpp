#include "solvagen/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace solvagen::solver {

using expr::Expr;

namespace {

constexpr double kRescaleAbove = 1e100;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const Expr& r_var() {
  static const Expr r = Expr::variable("r");
  return r;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

constexpr int kSeriesTerms = 12;
using Series = std::array<double, kSeriesTerms + 1>;

// Frobenius coefficients a_k (a_0 = 1) of u = x^nu sum a_k x^k for
// u'' = (V - E) u, with x^2 V = sum_j b_j x^j.
Series frobenius(const EndBehaviour& end, double E) {
  Series a{};
  a[0] = 1.0;
  for (int k = 1; k <= kSeriesTerms; ++k) {
    double rhs = 0.0;
    for (int j = 1; j <= 4 && j <= k; ++j) rhs += end.b[j] * a[k - j];
    if (k >= 2) rhs -= E * a[k - 2];
    const double denom = k * (2.0 * end.nu + k - 1.0);
    // A resonant order (integer gap between the roots) has no regular term.
    a[k] = denom == 0.0 ? 0.0 : rhs / denom;
  }
  return a;
}

double series_sum(const Series& a, double x) {
  double s = 0.0;
  for (int k = kSeriesTerms; k >= 0; --k) s = s * x + a[k];
  return s;
}

bool series_converged(const Series& a, double x) {
  double total = 0.0;
  double p = 1.0;
  std::array<double, kSeriesTerms + 1> mag{};
  for (int k = 0; k <= kSeriesTerms; ++k, p *= x) {
    mag[k] = std::abs(a[k]) * p;
    total += mag[k];
  }
  return mag[kSeriesTerms] + mag[kSeriesTerms - 1] <= 1e-13 * total;
}

// Least-degree fit x^2 V = sum_{j<5} b_j x^j through five samples; x is
// scaled by its largest value to keep the Vandermonde system tame.
std::array<double, 5> fit_quartic(const std::array<double, 5>& x, const std::array<double, 5>& y) {
  const double scale = x[4];
  std::array<std::array<double, 6>, 5> m{};
  for (int i = 0; i < 5; ++i) {
    double t = 1.0;
    for (int j = 0; j < 5; ++j, t *= x[i] / scale) m[i][j] = t;
    m[i][5] = y[i];
  }
  for (int c = 0; c < 5; ++c) {
    int piv = c;
    for (int r = c + 1; r < 5; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    std::swap(m[c], m[piv]);
    for (int r = c + 1; r < 5; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int j = c; j < 6; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::array<double, 5> b{};
  for (int c = 4; c >= 0; --c) {
    double v = m[c][5];
    for (int j = c + 1; j < 5; ++j) v -= m[c][j] * b[j];
    b[c] = v / m[c][c];
  }
  double p = 1.0;
  for (int j = 0; j < 5; ++j, p *= scale) b[j] /= p;
  return b;
}

double poly4(const std::array<double, 5>& b, double x) {
  return b[0] + x * (b[1] + x * (b[2] + x * (b[3] + x * b[4])));
}

// `at(i)` is V_eff i steps in from the end.
template <typename At>
Expected<EndBehaviour> fit_end(const At& at, double h, int available, std::optional<double> exponent,
                               const char* which) {
  auto x2v = [&](int i) { return (i * h) * (i * h) * at(i); };
  auto finish = [&](EndBehaviour e) -> Expected<EndBehaviour> {
    if (exponent) {
      e.nu = *exponent;
      return e;
    }
    // Exactly -1/4 (D = 2, l = 0) must survive the fit's rounding.
    if (e.b[0] < -0.25 - 1e-6) {
      return make_error(ErrorCode::FallToCenter, std::string("coefficient of 1/x^2 at the ") + which + " end is " +
                                                     fmt(e.b[0]) + " < -1/4");
    }
    e.nu = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * e.b[0])));
    return e;
  };

  for (int start : {64, 32, 16, 8, 4, 2}) {
    if (8 * start > available) continue;
    std::array<double, 5> xs{};
    std::array<double, 5> ys{};
    for (int j = 0; j < 5; ++j) {
      const int i = std::max(j + 1, static_cast<int>(std::lround((j + 1) * start / 5.0)));
      xs[j] = i * h;
      ys[j] = x2v(i);
    }
    EndBehaviour e;
    e.start = start;
    e.b = fit_quartic(xs, ys);
    // The quartic must also hold between its nodes, or V is not smooth enough
    // on this scale for the series.
    double scale = std::abs(e.b[0]);
    for (double y : ys) scale = std::max(scale, std::abs(y));
    bool smooth = true;
    for (int i = 1; i <= start && smooth; ++i) {
      smooth = std::abs(poly4(e.b, i * h) - x2v(i)) <= 1e-10 * std::max(scale, 1e-300);
    }
    if (!smooth) continue;
    SOLVAGEN_TRY(done, finish(e));
    // Checked at E = 0; numerov_integrate moves the start inward when a large
    // |E| needs it.
    if (series_converged(frobenius(done, 0.0), start * h)) return done;
  }
  std::array<double, 5> xs{};
  std::array<double, 5> ys{};
  for (int j = 0; j < 5; ++j) {
    xs[j] = (j + 1) * h;
    ys[j] = x2v(j + 1);
  }
  EndBehaviour e;
  e.start = 1;
  e.b = fit_quartic(xs, ys);
  // Only the inverse-square and Coulomb-like terms are trusted this close in.
  e.b[2] = e.b[3] = e.b[4] = 0.0;
  return finish(e);
}

// Sign changes with exact zeros skipped; used while shooting, where the
// growing solution makes a relative threshold meaningless.
int raw_sign_changes(std::span<const double> u) {
  int count = 0;
  int last = 0;
  for (double x : u) {
    const int s = (x > 0.0) - (x < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

struct Shot {
  double mismatch = 0.0;
  int nodes = 0;
  bool rescaled = false;
  Integration forward;
  Integration backward;
};

int matching_index(const SampledPotential& pot, double E, Shooting shooting) {
  const int N = pot.grid.size();
  const int lo = pot.left.start + 2;
  const int hi = N - 3 - pot.right.start;
  if (shooting == Shooting::Forward) return hi;
  int m = -1;
  for (int i = N - 2; i >= 1; --i) {
    if (pot.v[i] < E) {
      m = i;
      break;
    }
  }
  if (m < 0) {
    m = 1;
    for (int i = 1; i <= N - 2; ++i) {
      if (pot.v[i] < pot.v[m]) m = i;
    }
  }
  return std::clamp(m, lo, std::max(lo, hi));
}

Shot shoot(const SampledPotential& pot, double E, int m) {
  Shot s;
  s.forward = numerov_integrate(pot, E, Direction::Forward, m + 1);
  s.backward = numerov_integrate(pot, E, Direction::Backward, m - 1);
  const auto& f = s.forward.u;
  const auto& b = s.backward.u;
  s.mismatch = (f[m + 1] - f[m - 1]) / f[m] - (b[m + 1] - b[m - 1]) / b[m];
  s.nodes = raw_sign_changes(std::span(f).first(m + 1)) + raw_sign_changes(std::span(b).subspan(m));
  s.rescaled = s.forward.rescaled || s.backward.rescaled;
  return s;
}

bool too_high(const Shot& s, int k) { return s.nodes > k || (s.nodes == k && s.mismatch < 0.0); }

}  // namespace

Expected<RadialGrid> RadialGrid::make(double r_min, double r_max, int N) {
  if (!std::isfinite(r_min) || !std::isfinite(r_max) || !(r_max > r_min)) {
    return make_error(ErrorCode::InvalidParameter, "grid needs finite r_min < r_max, got [" + fmt(r_min) + ", " +
                                                       fmt(r_max) + "]");
  }
  if (N < 100) return make_error(ErrorCode::InvalidParameter, "grid needs at least 100 points, got " + std::to_string(N));
  return RadialGrid(r_min, r_max, N);
}

Expected<Expr> reduce_to_u(const catalog::QuantumSystem& sys, int index) {
  SOLVAGEN_TRY(v, sys.potential(index));
  const double D = sys.D;
  const double bracket = sys.ell * (sys.ell + D - 2.0) + (D - 1.0) * (D - 3.0) / 4.0;
  if (bracket == 0.0) return expr::simplify(v);
  return expr::simplify(v + Expr::constant(bracket) * expr::pow(r_var(), -2.0));
}

Expected<SampledPotential> sample_potential(const Expr& v_eff, const RadialGrid& grid,
                                            std::optional<double> left_exponent) {
  const int N = grid.size();
  std::vector<double> v(N, kNaN);
  for (int i = 1; i <= N - 2; ++i) {
    auto val = expr::eval(v_eff, "r", grid.r(i));
    if (!val) return val.error();
    if (!std::isfinite(*val)) {
      return make_error(ErrorCode::Domain, "V_eff is not finite at r = " + fmt(grid.r(i)));
    }
    v[i] = *val;
  }
  const double h = grid.h();
  const int available = (N - 2) / 2;
  SOLVAGEN_TRY(left, fit_end([&](int i) { return v[i]; }, h, available, left_exponent, "left"));
  SOLVAGEN_TRY(right, fit_end([&](int i) { return v[N - 1 - i]; }, h, available, std::nullopt, "right"));
  return SampledPotential{grid, std::move(v), left, right};
}

Integration numerov_integrate(const SampledPotential& pot, double E, Direction direction, int stop) {
  const int N = pot.grid.size();
  const double h2 = pot.grid.h() * pot.grid.h() / 12.0;
  Integration out;
  out.u.assign(N, 0.0);
  auto& u = out.u;
  const bool fwd = direction == Direction::Forward;
  const int step = fwd ? 1 : -1;
  const int first = fwd ? 1 : N - 2;
  if (stop < 0) stop = fwd ? N - 2 : 1;
  const EndBehaviour& end = fwd ? pot.left : pot.right;
  const double h = pot.grid.h();

  // Series values for the first start+1 points, scaled to 1 at `start`.
  const Series a = frobenius(end, E);
  int start = end.start;
  while (start > 1 && !series_converged(a, start * h)) start /= 2;
  const double ref = series_sum(a, start * h);
  for (int j = 1; j <= start + 1; ++j) {
    const int i = fwd ? j : N - 1 - j;
    u[i] = std::pow(static_cast<double>(j) / start, end.nu) * series_sum(a, j * h) / ref;
  }
  auto w = [&](int i) { return 1.0 - h2 * (pot.v[i] - E); };
  const int begin = fwd ? start + 1 : N - 2 - start;
  for (int i = begin; (stop - i) * step > 0; i += step) {
    const int next = i + step;
    const int prev = i - step;
    u[next] = (2.0 * u[i] * (1.0 + 5.0 * h2 * (pot.v[i] - E)) - u[prev] * w(prev)) / w(next);
    if (std::abs(u[next]) > kRescaleAbove) {
      for (int j = first; j != next + step; j += step) u[j] /= kRescaleAbove;
      out.rescaled = true;
    }
  }
  return out;
}

Expected<Integration> numerov_integrate(const Expr& v_eff, double E, const RadialGrid& grid, Direction direction) {
  SOLVAGEN_TRY(pot, sample_potential(v_eff, grid));
  return numerov_integrate(pot, E, direction);
}

int count_nodes(std::span<const double> u) {
  double peak = 0.0;
  for (double x : u) peak = std::max(peak, std::abs(x));
  const double floor = 1e-12 * peak;
  int count = 0;
  int last = 0;
  for (double x : u) {
    if (std::abs(x) < floor || x == 0.0) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (f[0] + f[1]);
  if (n == 3) return h / 3.0 * (f[0] + 4.0 * f[1] + f[2]);
  // Simpson needs an even number of intervals; a 3/8 panel takes the last three
  // when the count is odd.
  std::size_t intervals = n - 1;
  double tail = 0.0;
  if (intervals % 2 == 1) {
    const std::size_t k = n - 4;
    tail = 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
    intervals -= 3;
  }
  double sum = f[0] + f[intervals];
  for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f[i];
  return h / 3.0 * sum + tail;
}

Expected<EigenResult> find_eigenvalue(const SampledPotential& pot, int k, const SolveOptions& options) {
  if (k < 0) return make_error(ErrorCode::InvalidParameter, "node count must be >= 0");
  const int N = pot.grid.size();
  auto classify = [&](double E) { return shoot(pot, E, matching_index(pot, E, options.shooting)); };

  double v_min = HUGE_VAL;
  for (int i = 1; i <= N - 2; ++i) v_min = std::min(v_min, pot.v[i]);

  double lo = options.bracket ? options.bracket->first : v_min;
  double hi = options.bracket ? options.bracket->second : lo + std::max(1.0, std::abs(lo));
  if (options.continuum) {
    if (lo >= *options.continuum) {
      return make_error(ErrorCode::NoBoundState, "potential minimum " + fmt(lo) + " is not below the continuum " +
                                                     fmt(*options.continuum));
    }
    hi = std::min(hi, *options.continuum);
  }

  constexpr int kMaxWidening = 200;
  int widen = 0;
  for (double width = std::max(1.0, hi - lo); too_high(classify(lo), k); width *= 2.0) {
    if (++widen > kMaxWidening) return make_error(ErrorCode::NoConvergence, "could not bracket from below");
    hi = lo;
    lo -= width;
  }
  widen = 0;
  for (double width = std::max(1.0, hi - lo); !too_high(classify(hi), k); width *= 2.0) {
    if (options.continuum && hi >= *options.continuum) {
      return make_error(ErrorCode::NoBoundState, "no state with " + std::to_string(k) +
                                                     " nodes below the continuum " + fmt(*options.continuum));
    }
    if (++widen > kMaxWidening) return make_error(ErrorCode::NoConvergence, "could not bracket from above");
    hi = lo + 2.0 * width;
    if (options.continuum) hi = std::min(hi, *options.continuum);
  }

  int iterations = 0;
  while (hi - lo > 1e-10 * std::max(1.0, std::abs(0.5 * (lo + hi))) && iterations < options.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    (too_high(classify(mid), k) ? hi : lo) = mid;
    ++iterations;
  }
  const double E = 0.5 * (lo + hi);
  if (options.continuum && E >= *options.continuum) {
    return make_error(ErrorCode::NoBoundState, "eigenvalue " + fmt(E) + " lies in the continuum");
  }

  const int m = matching_index(pot, E, options.shooting);
  Shot s = shoot(pot, E, m);
  EigenResult res;
  res.E_numeric = E;
  res.iterations = iterations;
  res.matching_index = m;
  res.rescaled = s.rescaled;
  res.u.assign(N, 0.0);
  const double sf = s.forward.u[m];
  const double sb = s.backward.u[m];
  for (int i = 1; i <= m; ++i) res.u[i] = s.forward.u[i] / sf;
  for (int i = m + 1; i <= N - 2; ++i) res.u[i] = s.backward.u[i] / sb;

  std::vector<double> sq(N);
  for (int i = 0; i < N; ++i) sq[i] = res.u[i] * res.u[i];
  const double norm = std::sqrt(simpson(sq, pot.grid.h()));
  double peak = 0.0;
  for (double& x : res.u) {
    x /= norm;
    peak = std::max(peak, std::abs(x));
  }
  for (int i = 0; i < N; ++i) sq[i] = res.u[i] * res.u[i];
  res.norm = simpson(sq, pot.grid.h());
  res.nodes = count_nodes(res.u);

  const double h2 = pot.grid.h() * pot.grid.h() / 12.0;
  auto w = [&](int i) { return 1.0 - h2 * (pot.v[i] - E); };
  const double numerov =
      res.u[m + 1] * w(m + 1) - 2.0 * res.u[m] * (1.0 + 5.0 * h2 * (pot.v[m] - E)) + res.u[m - 1] * w(m - 1);
  res.residual_max = std::abs(numerov) / peak;
  return res;
}

Expected<EigenResult> find_eigenvalue(const Expr& v_eff, const RadialGrid& grid, int k, const SolveOptions& options) {
  SOLVAGEN_TRY(pot, sample_potential(v_eff, grid));
  return find_eigenvalue(pot, k, options);
}

Expected<RadialGrid> default_grid(const catalog::QuantumSystem& sys, int index) {
  SOLVAGEN_TRY(d, sys.domain(index));
  return RadialGrid::make(d.lo, d.hi, d.points);
}

Expected<EigenResult> solve_state(const catalog::QuantumSystem& sys, int index, std::optional<RadialGrid> grid,
                                  Shooting shooting) {
  SOLVAGEN_TRY(k, sys.nodes(index));
  SOLVAGEN_TRY(E_exact, sys.energy(index));
  SOLVAGEN_TRY(dom, sys.domain(index));
  SOLVAGEN_TRY(v_eff, reduce_to_u(sys, index));
  if (!grid) {
    SOLVAGEN_TRY(g, RadialGrid::make(dom.lo, dom.hi, dom.points));
    grid = g;
  }
  // A limit-circle exponent belongs to the domain's own left end.
  std::optional<double> exponent;
  if (dom.left_exponent && std::abs(grid->r_min() - dom.lo) <= 1e-12 * std::max(1.0, std::abs(dom.lo))) {
    exponent = dom.left_exponent;
  }
  SOLVAGEN_TRY(pot, sample_potential(v_eff, *grid, exponent));
  SolveOptions opts;
  opts.shooting = shooting;
  opts.continuum = dom.continuum;
  SOLVAGEN_TRY(res, find_eigenvalue(pot, k, opts));
  res.E_analytic = E_exact;
  const double diff = std::abs(res.E_numeric - E_exact);
  res.rel_error = diff / std::max(std::abs(E_exact), 1e-12);
  return res;
}

Expected<Expr> reduced_wavefunction(const catalog::QuantumSystem& sys, int index) {
  SOLVAGEN_TRY(psi, sys.psi(index));
  if (sys.D == 1) return psi;
  return expr::simplify(expr::pow(r_var(), 0.5 * (sys.D - 1)) * psi);
}

namespace {

struct Derivatives {
  double d1;
  double d2;
};

template <typename F>
Expected<Derivatives> central_differences(const F& f, double x, double h) {
  std::array<double, 5> v{};
  for (int s = -2; s <= 2; ++s) {
    SOLVAGEN_TRY(val, f(x + s * h));
    v[s + 2] = val;
  }
  return Derivatives{(v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h),
                     (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h)};
}

}  // namespace

Expected<double> residual(const catalog::QuantumSystem& sys, int index, std::optional<RadialGrid> grid,
                          std::optional<double> energy) {
  if (!grid) {
    SOLVAGEN_TRY(g, default_grid(sys, index));
    grid = g;
  }
  const bool psi_form = sys.power_law;
  Expr f;
  Expr v;
  if (psi_form) {
    SOLVAGEN_TRY(psi, sys.psi(index));
    SOLVAGEN_TRY(pot, sys.table_potential(index));
    f = psi;
    v = pot;
  } else {
    SOLVAGEN_TRY(u, reduced_wavefunction(sys, index));
    SOLVAGEN_TRY(pot, reduce_to_u(sys, index));
    f = u;
    v = pot;
  }
  double E = 0.0;
  if (energy) {
    E = *energy;
  } else {
    SOLVAGEN_TRY(e, sys.energy(index));
    E = e;
  }
  auto value = [&](double x) { return expr::eval(f, "r", x); };

  constexpr int kPoints = 2000;
  constexpr double kStep = 1e-3;
  const double lo = grid->r_min();
  const double hi = grid->r_max();
  const double margin = 0.005 * (hi - lo);
  double peak = 0.0;
  double worst = 0.0;
  for (int j = 0; j < kPoints; ++j) {
    const double x = lo + margin + (hi - lo - 2.0 * margin) * j / (kPoints - 1.0);
    const double d = std::min(x - lo, hi - x);
    Derivatives der{};
    if (d >= 50.0 * kStep) {
      SOLVAGEN_TRY(c, central_differences(value, x, kStep));
      der = c;
    } else {
      // Endpoint behaviour x^nu is not smooth on the scale of a fixed step.
      const double h = d / 20.0;
      SOLVAGEN_TRY(coarse, central_differences(value, x, h));
      SOLVAGEN_TRY(fine, central_differences(value, x, h / 2.0));
      der = {(16.0 * fine.d1 - coarse.d1) / 15.0, (16.0 * fine.d2 - coarse.d2) / 15.0};
    }
    SOLVAGEN_TRY(fx, value(x));
    SOLVAGEN_TRY(vx, expr::eval(v, "r", x));
    double r = der.d2 + (E - vx) * fx;
    if (psi_form && sys.D != 1) r += (sys.D - 1.0) / x * der.d1;
    if (!std::isfinite(r)) return make_error(ErrorCode::Domain, "residual not finite at r = " + fmt(x));
    peak = std::max(peak, std::abs(fx));
    worst = std::max(worst, std::abs(r));
  }
  if (peak == 0.0) return make_error(ErrorCode::Domain, "wavefunction vanishes on the grid");
  return worst / peak;
}

namespace {

// Closed-form u on the grid; ends where it is singular carry u = 0.
std::vector<double> sample_reduced(const Expr& u, const RadialGrid& grid) {
  std::vector<double> out(grid.size());
  for (int p = 0; p < grid.size(); ++p) {
    auto v = expr::eval(u, "r", grid.r(p));
    out[p] = v && std::isfinite(*v) ? *v : 0.0;
  }
  return out;
}

}  // namespace

Expected<double> norm_squared(const catalog::QuantumSystem& sys, int index, std::optional<RadialGrid> grid) {
  if (!grid) {
    SOLVAGEN_TRY(g, default_grid(sys, index));
    grid = g;
  }
  SOLVAGEN_TRY(u, reduced_wavefunction(sys, index));
  auto vals = sample_reduced(u, *grid);
  for (double& v : vals) v *= v;
  return simpson(vals, grid->h());
}

Expected<double> orthogonality(const catalog::QuantumSystem& sys, int i, int j, std::optional<RadialGrid> grid) {
  if (!grid) {
    SOLVAGEN_TRY(di, sys.domain(i));
    SOLVAGEN_TRY(dj, sys.domain(j));
    SOLVAGEN_TRY(g, RadialGrid::make(std::min(di.lo, dj.lo), std::max(di.hi, dj.hi), std::max(di.points, dj.points)));
    grid = g;
  }
  SOLVAGEN_TRY(ui, reduced_wavefunction(sys, i));
  SOLVAGEN_TRY(uj, reduced_wavefunction(sys, j));
  const auto a = sample_reduced(ui, *grid);
  const auto b = sample_reduced(uj, *grid);
  const int N = grid->size();
  std::vector<double> aa(N), bb(N), ab(N);
  for (int p = 0; p < N; ++p) {
    aa[p] = a[p] * a[p];
    bb[p] = b[p] * b[p];
    ab[p] = a[p] * b[p];
  }
  const double h = grid->h();
  const double na = simpson(aa, h);
  const double nb = simpson(bb, h);
  if (!(na > 0.0) || !(nb > 0.0)) return make_error(ErrorCode::Domain, "wavefunction vanishes on the grid");
  return std::abs(simpson(ab, h)) / std::sqrt(na * nb);
}

}  // namespace solvagen::solver
