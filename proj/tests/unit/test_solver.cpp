#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "solvagen/catalog.hpp"
#include "solvagen/solver.hpp"

namespace cat = solvagen::catalog;
namespace ex = solvagen::expr;
namespace sv = solvagen::solver;
using solvagen::ErrorCode;

namespace {

constexpr double kPi = std::numbers::pi;

ex::Expr P(const char* text) { return ex::parse(text).value(); }

sv::RadialGrid grid(double lo, double hi, int n) { return sv::RadialGrid::make(lo, hi, n).value(); }

cat::QuantumSystem make(std::string_view id, int D = 3, int ell = 0, const std::map<std::string, double>& p = {}) {
  return cat::build(id, D, ell, p).value();
}

double at(const ex::Expr& e, double r) { return ex::eval(e, "r", r).value(); }

}  // namespace

TEST(RadialGrid, Validation) {
  EXPECT_FALSE(sv::RadialGrid::make(0.0, 1.0, 50));
  EXPECT_FALSE(sv::RadialGrid::make(1.0, 0.5, 200));
  const auto g = grid(0.0, 1.0, 101);
  EXPECT_DOUBLE_EQ(g.h(), 0.01);
  EXPECT_DOUBLE_EQ(g.r(100), 1.0);
}

TEST(ReduceToU, BracketExamples) {
  const auto osc3 = make("harmonic_oscillator", 3, 0);
  const auto v3 = sv::reduce_to_u(osc3, 0).value();
  EXPECT_NEAR(at(v3, 1.3), at(osc3.potential(0).value(), 1.3), 1e-14);

  // D = 2 adds -1/(4r^2). A non power-law V already carries the opposite
  // background term, so its V_eff is the D = 3 potential.
  const auto m2 = make("morse_like", 2, 0);
  const auto m3 = make("morse_like", 3, 0);
  const auto v2 = sv::reduce_to_u(m2, 0).value();
  EXPECT_NEAR(at(v2, 0.7), at(m2.potential(0).value(), 0.7) - 0.25 / 0.49, 1e-12);
  EXPECT_NEAR(at(v2, 0.7), at(m3.potential(0).value(), 0.7), 1e-12);

  const auto osc5 = make("harmonic_oscillator", 5, 1);
  const auto v5 = sv::reduce_to_u(osc5, 1).value();
  EXPECT_NEAR(at(v5, 0.8) - at(osc5.potential(1).value(), 0.8), 6.0 / 0.64, 1e-12);
}

TEST(CountNodes, Examples) {
  std::vector<double> s(1001);
  for (int i = 0; i <= 1000; ++i) s[i] = std::sin(3 * kPi * i / 1000.0);
  EXPECT_EQ(sv::count_nodes(s), 2);
  EXPECT_EQ(sv::count_nodes(std::vector<double>{1, 2, 3, 4}), 0);
  EXPECT_EQ(sv::count_nodes(std::vector<double>{1, -1, 1, -1, 1}), 4);
  // Values below 1e-12 max|u| are not sign changes.
  EXPECT_EQ(sv::count_nodes(std::vector<double>{1, 1e-15, -1e-15, 1}), 0);
}

TEST(Simpson, HandlesOddAndEvenPointCounts) {
  for (int n : {101, 100}) {
    std::vector<double> f(n);
    const double h = kPi / (n - 1);
    for (int i = 0; i < n; ++i) f[i] = std::sin(i * h);
    EXPECT_NEAR(sv::simpson(f, h), 2.0, 1e-7) << n;
  }
}

TEST(Numerov, FreeParticleBox) {
  const auto g = grid(0.0, 1.0, 2001);
  auto one = sv::numerov_integrate(P("0"), kPi * kPi, g, sv::Direction::Forward).value();
  double peak = 0;
  for (double v : one.u) peak = std::max(peak, std::abs(v));
  EXPECT_LT(std::abs(one.u.back()), 1e-6 * peak);

  auto two = sv::numerov_integrate(P("0"), 4 * kPi * kPi, g, sv::Direction::Forward).value();
  EXPECT_EQ(sv::count_nodes(std::span<const double>(two.u).first(g.size() - 1)), 1);
}

// At an eigenvalue the forward and backward solutions have the same
// logarithmic derivative wherever they meet; the finite-difference estimate is
// the same for both, so its error cancels in the comparison.
TEST(Numerov, LogDerivativesMatchAtEigenvalue) {
  const auto osc = make("harmonic_oscillator", 3, 0, {{"omega", 1.0}});
  const auto pot = sv::sample_potential(sv::reduce_to_u(osc, 0).value(), grid(0.0, 10.0, 20001)).value();
  const int m = 3000;  // r = 1.5
  const auto fw = sv::numerov_integrate(pot, 1.5, sv::Direction::Forward, m + 1);
  const auto bw = sv::numerov_integrate(pot, 1.5, sv::Direction::Backward, m - 1);
  const double h = pot.grid.h();
  const double lf = (fw.u[m + 1] - fw.u[m - 1]) / (2 * h * fw.u[m]);
  const double lb = (bw.u[m + 1] - bw.u[m - 1]) / (2 * h * bw.u[m]);
  EXPECT_LT(std::abs(lf - lb), 1e-8);
}

TEST(FindEigenvalue, Examples) {
  auto box = sv::find_eigenvalue(P("0"), grid(0.0, 1.0, 2001), 0).value();
  EXPECT_NEAR(box.E_numeric, kPi * kPi, 1e-6);
  EXPECT_EQ(box.nodes, 0);
  EXPECT_NEAR(box.norm, 1.0, 1e-3);

  const auto osc = make("harmonic_oscillator", 3, 0, {{"omega", 1.0}});
  auto ho = sv::find_eigenvalue(sv::reduce_to_u(osc, 0).value(), grid(0.0, 12.0, 12001), 0).value();
  EXPECT_NEAR(ho.E_numeric, 1.5, 1e-6);

  const auto coul = make("coulomb", 3, 0);
  auto c = sv::find_eigenvalue(sv::reduce_to_u(coul, 0).value(), grid(0.0, 60.0, 12000), 0).value();
  EXPECT_NEAR(c.E_numeric, -1.0, 1e-5);
}

TEST(FindEigenvalue, ReportsMissingBoundState) {
  // Morse-like with beta = 2.5 binds n = 0, 1, 2 only (E = 0 at n = 2).
  const auto s = make("morse_like", 3, 0, {{"beta", 2.5}});
  sv::SolveOptions opt;
  opt.continuum = 0.0;
  const auto d = s.domain(0).value();
  auto e = sv::find_eigenvalue(sv::reduce_to_u(s, 0).value(), grid(d.lo, d.hi, d.points), 3, opt);
  ASSERT_FALSE(e);
  EXPECT_EQ(e.error().code, ErrorCode::NoBoundState);
}

TEST(SolveState, CatalogCases) {
  const auto osc = make("harmonic_oscillator", 5, 1, {{"omega", 2.0}});
  auto a = sv::solve_state(osc, 3).value();
  EXPECT_LT(a.rel_error, 1e-6);
  EXPECT_EQ(a.nodes, 1);

  const auto morse = make("morse_like", 3, 0, {{"c", 1.0}, {"beta", 5.5}});
  for (int n = 0; n <= 4; ++n) {
    auto r = sv::solve_state(morse, n).value();
    EXPECT_LT(r.rel_error, 1e-5) << n;
    EXPECT_EQ(r.nodes, n);
  }
}

TEST(Residual, Examples) {
  const auto osc = make("harmonic_oscillator", 3, 0, {{"omega", 1.0}});
  EXPECT_LT(sv::residual(osc, 0).value(), 1e-6);
  EXPECT_GE(sv::residual(osc, 0, std::nullopt, 1.5 + 0.1).value(), 0.09);

  const auto morse = make("morse_like", 3, 0, {{"c", 1.0}, {"beta", 5.5}});
  EXPECT_LT(sv::residual(morse, 0).value(), 1e-5);
}

TEST(Orthogonality, Examples) {
  const auto osc = make("harmonic_oscillator", 3, 0, {{"omega", 1.0}});
  EXPECT_LT(sv::orthogonality(osc, 0, 2).value(), 1e-6);
  EXPECT_NEAR(sv::orthogonality(osc, 2, 2).value(), 1.0, 1e-6);

  const auto coul = make("coulomb", 3, 0);
  EXPECT_LT(sv::orthogonality(coul, 0, 1, grid(0.0, 80.0, 16001)).value(), 1e-5);
}

// Numerov is fourth order globally: halving h cuts the energy error by about 16.
TEST(SolverProperties, GridConvergenceOnOscillator) {
  const auto osc = make("harmonic_oscillator", 3, 0, {{"omega", 1.0}});
  auto coarse = sv::solve_state(osc, 4, grid(0.0, 10.0, 201)).value();
  auto fine = sv::solve_state(osc, 4, grid(0.0, 10.0, 401)).value();
  const double e1 = std::abs(coarse.E_numeric - coarse.E_analytic);
  const double e2 = std::abs(fine.E_numeric - fine.E_analytic);
  EXPECT_GE(e1 / e2, 8.0) << e1 << " " << e2;
}

// E - omega D / 2 depends only on n_r and l, not on D.
TEST(SolverProperties, DimensionSweep) {
  for (int nr : {0, 1}) {
    std::vector<double> shifted;
    for (int D : {1, 2, 3, 5, 7}) {
      const auto osc = make("harmonic_oscillator", D, 0, {{"omega", 1.0}});
      auto r = sv::solve_state(osc, 2 * nr).value();
      shifted.push_back(r.E_numeric - D / 2.0);
    }
    for (double s : shifted) EXPECT_NEAR(s, shifted.front(), 1e-6) << "n_r=" << nr;
  }
}

TEST(SolverProperties, ForwardAndMatchedShootingAgree) {
  const auto osc = make("harmonic_oscillator", 3, 0, {{"omega", 1.0}});
  const auto morse = make("morse_like", 3, 0);
  for (const auto* s : {&osc, &morse}) {
    for (const auto& st : s->states(4)) {
      auto m = sv::solve_state(*s, st.index, std::nullopt, sv::Shooting::Matched).value();
      auto f = sv::solve_state(*s, st.index, std::nullopt, sv::Shooting::Forward).value();
      EXPECT_NEAR(f.E_numeric, m.E_numeric, 1e-8 * std::max(1.0, std::abs(m.E_numeric))) << s->id << " " << st.index;
    }
  }
}

TEST(SolverProperties, NodeTheorem) {
  const auto osc = make("harmonic_oscillator", 3, 1, {{"omega", 1.0}});
  const auto pot = sv::sample_potential(sv::reduce_to_u(osc, 1).value(), grid(0.0, 12.0, 8001)).value();
  double prev = -HUGE_VAL;
  for (int k = 0; k <= 5; ++k) {
    auto r = sv::find_eigenvalue(pot, k).value();
    EXPECT_EQ(r.nodes, k);
    EXPECT_EQ(sv::count_nodes(r.u), k);
    EXPECT_GT(r.E_numeric, prev);
    prev = r.E_numeric;
  }
}
