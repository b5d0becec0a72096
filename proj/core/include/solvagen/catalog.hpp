#pragma once

// The solvable systems produced by the transformation method, each with its
// closed-form spectrum, potential and wavefunctions.
//
// Conventions shared by every system:
//   - V(r) is the potential of the D-dimensional radial equation without the
//     centrifugal term; for non power-law systems it carries the background
//     term -(D-1)(D-3)/(4 r^2) explicitly.
//   - A state is addressed by an integer index whose meaning is per system
//     (the table's n, the principal n of the oscillator, n_r for Coulomb, m
//     for the sech well). states() enumerates the valid bound ones.
//   - psi(index) is the closed form, with r^{-(D-1)/2} included.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solvagen/expected.hpp"
#include "solvagen/expr.hpp"
#include "solvagen/polys.hpp"
#include "solvagen/transform.hpp"

namespace solvagen::catalog {

enum class Status { Verified, PaperAmbiguous, Unverified };
const char* status_name(Status s);

// Interval on which the reduced radial function u = r^{(D-1)/2} psi is
// solved numerically, with Dirichlet conditions at both ends.
struct StateDomain {
  double lo;
  double hi;
  int points = 20000;
  // Leading power of u at lo when it is not the larger Frobenius root
  // (limit-circle endpoints).
  std::optional<double> left_exponent;
  // Energies at or above this are continuum, not bound states.
  std::optional<double> continuum;
};

struct State {
  int index;
  int nodes;
  double energy;
};

struct QuantumSystem {
  std::string id;
  std::string title;
  std::string source;  // family, mapping and relation that produced it
  int D = 3;
  int ell = 0;
  bool power_law = false;  // centrifugal term produced by the mapping itself
  std::map<std::string, double> params;
  Status status = Status::Verified;
  std::vector<std::string> constraints;
  std::vector<std::string> notes;
  std::string alias_of;
  std::string variant_of;  // set on systems rederived from a printed one

  std::function<Expected<int>(int)> check_index;  // returns node count
  std::function<double(int)> energy_fn;
  std::function<expr::Expr(int)> potential_fn;
  std::function<expr::Expr(int)> psi_fn;
  std::function<Expected<polys::PolynomialFamily>(int)> family_fn;
  std::function<Expected<transform::Mapping>(int)> mapping_fn;
  std::function<StateDomain(int)> domain_fn;
  std::function<bool(int)> is_bound_fn;
  std::function<std::optional<expr::Expr>(int)> printed_psi_fn;  // when it differs from psi
  int first_index = 0;
  int last_index = 1000;  // inclusive; bound states may end earlier
  bool potential_depends_on_state = false;

  Expected<int> nodes(int index) const { return check_index(index); }
  Expected<double> energy(int index) const;
  Expected<expr::Expr> potential(int index) const;
  Expected<expr::Expr> psi(int index) const;
  Expected<polys::PolynomialFamily> family(int index) const;
  Expected<transform::Mapping> mapping(int index) const;
  Expected<StateDomain> domain(int index) const;
  std::optional<expr::Expr> printed_psi(int index) const;

  // Bound states with index <= n_max, ascending by index.
  std::vector<State> states(int n_max) const;

  // V + l(l+D-2)/r^2: the potential as a table would print it.
  Expected<expr::Expr> table_potential(int index) const;
};

// --- Associated Laguerre ---------------------------------------------------

// g = A exp(-c r); index n with 2 beta >= 2n + 1.
Expected<QuantumSystem> morse_like(int D, double c, double beta, double A = 1.0);
// Same system reached through g''^2/g'^2 = c^2.
Expected<QuantumSystem> morse_like_second_derivative(int D, double c, double beta, double A = 1.0);
// g = omega r^2 / 2; index is the principal n = 2 n_r + l.
Expected<QuantumSystem> harmonic_oscillator(int D, int ell, double omega);
// g = c r with coupling 2*strength; index n_r.
Expected<QuantumSystem> coulomb(int D, int ell, double strength = 1.0);

// --- Hypergeometric 2F1 ----------------------------------------------------

// g = r^2 on (0, 1); printed potential and energy.
Expected<QuantumSystem> hyper_oscillator(int D, int ell, double beta);
// Potential rederived from the transformation.
Expected<QuantumSystem> hyper_oscillator_rederived(int D, int ell, double beta);
// g = A exp(-p r); beta1 fixes the well depth.
Expected<QuantumSystem> hulthen_like(int D, double p, double A, double beta1);
// Same family reached through g''^2/g'^2 = p^2, depth parameter delta.
Expected<QuantumSystem> hulthen_like_second_derivative(int D, double p, double A, double delta);
// g = 1 - A exp(-p r); repulsive, printed energies.
Expected<QuantumSystem> eckart_like(int D, double p, double A, double gamma1);

// --- Associated Legendre and Jacobi ----------------------------------------

// g = sin(p r); order m >= 1 fixes the potential, index n >= m.
Expected<QuantumSystem> trig_poschl_teller(int D, double p, int m);
// g = tanh(p r); depth n >= 2, index m in [2, n].
Expected<QuantumSystem> sech_poschl_teller(int D, double p, int n);
// g = sin(p r) with Jacobi(alpha, beta); printed potential and energy.
Expected<QuantumSystem> trig_scarf(int D, double p, double alpha, double beta);
Expected<QuantumSystem> trig_scarf_rederived(int D, double p, double alpha, double beta);
// g = tanh(p r) with Jacobi(alpha, beta); printed energy.
Expected<QuantumSystem> rosen_morse(int D, double p, double alpha, double beta);
Expected<QuantumSystem> rosen_morse_rederived(int D, double p, double alpha, double beta);

// --- Registry ---------------------------------------------------------------

struct ParamSpec {
  std::string name;
  double default_value;
  std::string description;
};

struct CatalogEntry {
  std::string id;
  std::string summary;
  bool uses_ell;  // accepts l != 0
  std::vector<ParamSpec> params;
};

const std::vector<CatalogEntry>& entries();
const CatalogEntry* find_entry(std::string_view id);

// Builds a system from its id with defaults overridden by `params`; unknown
// parameter names are rejected.
Expected<QuantumSystem> build(std::string_view id, int D, int ell, const std::map<std::string, double>& params = {});

}  // namespace solvagen::catalog
