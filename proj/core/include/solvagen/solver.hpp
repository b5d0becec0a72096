#pragma once

// Numerical check of the catalog: the radial equation is reduced to
// u'' + (E - V_eff) u = 0 and solved by Numerov shooting with node-counting
// bisection, independently of any closed form.

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "solvagen/catalog.hpp"
#include "solvagen/expected.hpp"
#include "solvagen/expr.hpp"

namespace solvagen::solver {

// Uniform grid x_i = r_min + i h, i = 0..N-1, h = (r_max - r_min)/(N-1).
// u vanishes at both ends; the potential is never evaluated there. r_min may
// be negative for systems solved on a line or a cell.
class RadialGrid {
 public:
  static Expected<RadialGrid> make(double r_min, double r_max, int N);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  int size() const { return n_; }
  double h() const { return (r_max_ - r_min_) / (n_ - 1); }
  double r(int i) const { return r_min_ + i * h(); }

 private:
  RadialGrid(double lo, double hi, int n) : r_min_(lo), r_max_(hi), n_(n) {}
  double r_min_;
  double r_max_;
  int n_;
};

// Near an end, at distance x: x^2 V_eff ~ sum_j b[j] x^j and u is the
// Frobenius series x^nu sum_k a_k x^k. Numerov starts `start` grid steps in;
// closer points come from the series, where a uniform-step scheme would be
// inaccurate for non-integer nu.
struct EndBehaviour {
  std::array<double, 5> b{};
  double nu = 1.0;
  int start = 1;

  double inverse_square() const { return b[0]; }
};

struct SampledPotential {
  RadialGrid grid;
  std::vector<double> v;  // V_eff at interior points; ends hold NaN
  EndBehaviour left;
  EndBehaviour right;
};

// V_eff = V + [l(l+D-2) + (D-1)(D-3)/4] / r^2, simplified.
Expected<expr::Expr> reduce_to_u(const catalog::QuantumSystem& sys, int index);

// Evaluates V_eff on the grid and fits the behaviour at both ends.
// left_exponent overrides the larger indicial root at r_min.
Expected<SampledPotential> sample_potential(const expr::Expr& v_eff, const RadialGrid& grid,
                                            std::optional<double> left_exponent = std::nullopt);

enum class Direction { Forward, Backward };

struct Integration {
  std::vector<double> u;  // full grid; entries not reached are 0
  bool rescaled = false;
};

// Numerov recurrence from the seeded end up to index `stop` (inclusive).
Integration numerov_integrate(const SampledPotential& pot, double E, Direction direction, int stop = -1);
Expected<Integration> numerov_integrate(const expr::Expr& v_eff, double E, const RadialGrid& grid,
                                        Direction direction);

// Strict sign changes, ignoring |u| < 1e-12 max|u|.
int count_nodes(std::span<const double> u);

// Composite Simpson on uniform spacing; a 3/8 panel absorbs an even count.
double simpson(std::span<const double> f, double h);

enum class Shooting {
  Matched,  // forward and backward, matched at the outermost turning point
  Forward,  // forward across the whole grid, matched to the far-end seed
};

struct SolveOptions {
  Shooting shooting = Shooting::Matched;
  std::optional<std::pair<double, double>> bracket;
  std::optional<double> continuum;  // no bound state at or above this
  int max_iterations = 200;
};

struct EigenResult {
  double E_numeric = 0.0;
  int nodes = 0;
  double norm = 0.0;
  double residual_max = 0.0;  // Numerov residual at the matching point / max|u|
  double E_analytic = 0.0;
  double rel_error = 0.0;
  int iterations = 0;
  int matching_index = 0;
  bool rescaled = false;
  std::vector<double> u;  // normalized, same length as the grid
};

Expected<EigenResult> find_eigenvalue(const SampledPotential& pot, int k, const SolveOptions& options = {});
Expected<EigenResult> find_eigenvalue(const expr::Expr& v_eff, const RadialGrid& grid, int k,
                                      const SolveOptions& options = {});

// Grid from the system's state domain.
Expected<RadialGrid> default_grid(const catalog::QuantumSystem& sys, int index);

// Solves one catalog state and fills E_analytic / rel_error.
Expected<EigenResult> solve_state(const catalog::QuantumSystem& sys, int index,
                                  std::optional<RadialGrid> grid = std::nullopt, Shooting shooting = Shooting::Matched);

// Schrodinger residual of the closed form, relative to its peak, at 2000
// points spread over the grid with the outer 0.5% at each end left out.
// Power-law systems use psi'' + (D-1)/r psi' + (E - V - l(l+D-2)/r^2) psi on
// r > 0; the others use u'' + (E - V_eff) u with u = r^{(D-1)/2} psi, which
// stays defined on a line or cell. Derivatives are 5-point central
// differences with step 1e-3, shrunk and Richardson-extrapolated near an end.
Expected<double> residual(const catalog::QuantumSystem& sys, int index, std::optional<RadialGrid> grid = std::nullopt,
                          std::optional<double> energy = std::nullopt);

// |int u_i u_j dr| of the normalized closed forms (Simpson on the grid).
Expected<double> orthogonality(const catalog::QuantumSystem& sys, int i, int j,
                               std::optional<RadialGrid> grid = std::nullopt);

// int u^2 dr of the closed form (Simpson on the grid), for normalizing psi.
Expected<double> norm_squared(const catalog::QuantumSystem& sys, int index,
                              std::optional<RadialGrid> grid = std::nullopt);

// r^{(D-1)/2} psi as an expression defined wherever u is.
Expected<expr::Expr> reduced_wavefunction(const catalog::QuantumSystem& sys, int index);

}  // namespace solvagen::solver
