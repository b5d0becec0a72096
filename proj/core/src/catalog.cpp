#include "solvagen/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace solvagen::catalog {

using expr::Expr;
using polys::PolynomialFamily;
using transform::Relation;

namespace {

const Expr& r_var() {
  static const Expr r = Expr::variable("r");
  return r;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Error invalid(const std::string& what) { return make_error(ErrorCode::InvalidParameter, what); }
Error violated(const std::string& what) { return make_error(ErrorCode::Constraint, what); }

double background_coefficient(int D) { return (D - 1.0) * (D - 3.0) / 4.0; }

Expr radial_prefactor(int D) { return D == 1 ? Expr(1.0) : expr::pow(r_var(), -0.5 * (D - 1)); }

// body - (D-1)(D-3)/(4 r^2), kept as a separate flat term so that adding the
// reduction bracket later cancels it symbolically.
Expr with_background(const Expr& body, int D) {
  const double k = background_coefficient(D);
  std::vector<Expr> terms;
  if (body.op() == expr::Op::Add) {
    terms.assign(body.args().begin(), body.args().end());
  } else {
    terms.push_back(body);
  }
  if (k != 0.0) terms.push_back(Expr::mul({Expr::constant(-k), expr::pow(r_var(), -2.0)}));
  return Expr::add(std::move(terms));
}

Expr q_of(const PolynomialFamily& fam, const Expr& g) {
  return expr::substitute(polys::polynomial_expr(fam, "g"), "g", g);
}

// Associated Legendre Q(g) with (1 - g^2)^{1/2} supplied as `root`; forming
// 1 - g^2 from g = sin or tanh cancels catastrophically near the ends.
Expr legendre_of(const PolynomialFamily& fam, const Expr& g, const Expr& root, int m) {
  const auto c = polys::coefficients(fam);
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0.0) terms.push_back(c[k] * expr::pow(g, static_cast<double>(k)));
  }
  Expr poly = terms.empty() ? Expr(0.0) : Expr::add(std::move(terms));
  if (m != 0) poly = expr::pow(root, std::abs(m)) * poly;
  return expr::simplify(poly);
}

int grid_points(double length, double h) {
  const double n = std::ceil(length / h) + 1.0;
  return static_cast<int>(std::clamp(n, 4000.0, 200000.0));
}

std::optional<Error> check_dimension(int D) {
  if (D < 1) return invalid("dimension D must be >= 1, got " + std::to_string(D));
  return std::nullopt;
}

std::optional<Error> check_positive(const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return invalid(std::string(name) + " must be > 0, got " + fmt(v));
  return std::nullopt;
}

Expected<int> index_error(const std::string& what) { return violated(what); }

// Mapping for one state, sampled on that state's solve interval.
std::function<Expected<transform::Mapping>(int)> mapping_on_domain(
    std::function<Expected<transform::Mapping>(int)> make, std::function<StateDomain(int)> domain) {
  return [make = std::move(make), domain = std::move(domain)](int n) -> Expected<transform::Mapping> {
    SOLVAGEN_TRY(m, make(n));
    const StateDomain d = domain(n);
    m.lo = d.lo;
    m.hi = d.hi;
    return m;
  };
}

// --- Associated Laguerre --------------------------------------------------------

Expected<QuantumSystem> morse_impl(int D, double c, double beta, double A, Relation relation) {
  if (auto e = check_dimension(D)) return *e;
  if (auto e = check_positive("c", c)) return *e;
  if (auto e = check_positive("A", A)) return *e;
  if (!(beta > 0.5)) return invalid("beta must exceed 1/2, got " + fmt(beta));

  QuantumSystem s;
  s.D = D;
  s.params = {{"c", c}, {"beta", beta}, {"A", A}};
  s.constraints = {"c > 0", "A > 0", "beta > 1/2", "state n requires beta >= n + 1/2 (equality is the E = 0 threshold)"};
  auto alpha = [beta](int n) { return 2.0 * beta - 2.0 * n - 1.0; };

  s.check_index = [alpha, beta](int n) -> Expected<int> {
    if (n < 0) return index_error("state index n must be >= 0");
    if (alpha(n) < 0.0) return index_error("n = " + std::to_string(n) + " requires beta >= n + 1/2, beta = " + fmt(beta));
    return n;
  };
  s.is_bound_fn = [alpha](int n) { return alpha(n) > 0.0; };
  s.last_index = static_cast<int>(std::floor(beta - 0.5));
  s.energy_fn = [alpha, c](int n) { return -c * c * alpha(n) * alpha(n) / 4.0; };

  const Expr& r = r_var();
  const Expr decay = expr::exp(-c * r);
  const Expr V = with_background(
      Expr::add({(c * c * A * A / 4.0) * expr::exp(-2.0 * c * r), (-c * c * A * beta) * decay}), D);
  s.potential_fn = [V](int) { return V; };

  const Expr g = A * decay;
  s.family_fn = [alpha](int n) { return PolynomialFamily::laguerre(n, alpha(n)); };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::laguerre(n, alpha(n)).value();
    return radial_prefactor(D) * expr::exp((-0.5 * alpha(n) * c) * r) * expr::exp(-0.5 * g) * q_of(fam, g);
  };
  s.printed_psi_fn = [=](int n) -> std::optional<Expr> {
    auto fam = PolynomialFamily::laguerre(n, 2.0 * beta - 2.0 * n - 2.0);
    if (!fam) return std::nullopt;
    const Expr bare = expr::exp(-c * r);
    return radial_prefactor(D) * expr::exp((-0.5 * alpha(n) * c) * r) * expr::exp(-0.5 * bare) * q_of(*fam, bare);
  };
  s.domain_fn = [=](int n) {
    const double a = std::max(alpha(n), 1e-3);
    const double kappa = 0.5 * c * a;
    const double wall = 80.0 + 4.0 * beta;
    StateDomain d;
    d.lo = -std::log(wall / A) / c;
    d.hi = std::log(A / a) / c + std::min(40.0 / kappa, 2000.0 / c) + 5.0 / c;
    d.points = grid_points(d.hi - d.lo, 0.02 / (c * beta));
    d.continuum = 0.0;
    return d;
  };
  s.mapping_fn = mapping_on_domain([=](int) { return transform::make_mapping(relation, c, A); }, s.domain_fn);
  s.notes = {
      "solved on the whole line: for A = 1 the well sits at negative r",
      "psi uses L_n^alpha(A exp(-c r)) with alpha = 2 beta - 2n - 1; the printed superscript 2 beta - 2n - 2 "
      "is kept as printed_psi and does not solve the equation"};
  return s;
}

}  // namespace

Expected<QuantumSystem> morse_like(int D, double c, double beta, double A) {
  auto s = morse_impl(D, c, beta, A, Relation::PowerOverSquare);
  if (!s) return s;
  s->id = "morse_like";
  s->title = "Morse-like exponential well";
  s->source = "Laguerre family, g = A exp(-c r), g'^2/g^2 = c^2";
  return s;
}

Expected<QuantumSystem> morse_like_second_derivative(int D, double c, double beta, double A) {
  auto s = morse_impl(D, c, beta, A, Relation::SecondDeriv);
  if (!s) return s;
  s->id = "morse_like_second_derivative";
  s->title = "Morse-like well from g''^2/g'^2 = c^2";
  s->source = "Laguerre family, g = A exp(-c r), g''^2/g'^2 = c^2";
  s->alias_of = "morse_like";
  s->notes.push_back("the relation g''^2/g'^2 = c^2 admits the same exponential mapping, so the system coincides "
                     "with morse_like");
  return s;
}

Expected<QuantumSystem> harmonic_oscillator(int D, int ell, double omega) {
  if (auto e = check_dimension(D)) return *e;
  if (ell < 0) return invalid("l must be >= 0");
  if (auto e = check_positive("omega", omega)) return *e;

  QuantumSystem s;
  s.id = "harmonic_oscillator";
  s.title = "D-dimensional isotropic oscillator";
  s.source = "Laguerre family, g = omega r^2 / 2, g'^2/g = 2 omega";
  s.D = D;
  s.ell = ell;
  s.power_law = true;
  s.params = {{"omega", omega}};
  s.constraints = {"omega > 0", "principal n = 2 n_r + l with n_r >= 0"};
  const double alpha = ell + (D - 2.0) / 2.0;

  s.check_index = [ell](int n) -> Expected<int> {
    if (n < ell || (n - ell) % 2 != 0) {
      return index_error("principal n = " + std::to_string(n) + " needs n - l even and >= 0 (l = " +
                         std::to_string(ell) + ")");
    }
    return (n - ell) / 2;
  };
  s.is_bound_fn = [](int) { return true; };
  s.first_index = ell;
  s.energy_fn = [omega, D](int n) { return omega * (n + D / 2.0); };

  const Expr& r = r_var();
  const Expr V = (omega * omega / 4.0) * expr::pow(r, 2.0);
  s.potential_fn = [V](int) { return V; };
  const Expr g = (omega / 2.0) * expr::pow(r, 2.0);
  s.family_fn = [alpha, ell](int n) { return PolynomialFamily::laguerre((n - ell) / 2, alpha); };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::laguerre((n - ell) / 2, alpha).value();
    Expr lead = ell == 0 ? Expr(1.0) : expr::pow(r, static_cast<double>(ell));
    return lead * expr::exp((-omega / 4.0) * expr::pow(r, 2.0)) * q_of(fam, g);
  };
  s.domain_fn = [=](int n) {
    const double E = omega * (n + D / 2.0);
    StateDomain d;
    d.lo = 0.0;
    d.hi = 2.0 * std::sqrt(E) / omega + 12.0 / std::sqrt(omega);
    d.points = grid_points(d.hi, 0.01 / std::sqrt(E));
    d.left_exponent = alpha + 0.5;
    return d;
  };
  s.mapping_fn = mapping_on_domain(
      [omega](int) { return transform::make_mapping(Relation::PowerOverG, std::sqrt(2.0 * omega)); }, s.domain_fn);
  if (alpha < 0.0) {
    s.notes.push_back("D = 1, l = 0: u = psi is even and finite at r = 0, so the solver starts from u'(0) = 0");
  }
  return s;
}

Expected<QuantumSystem> coulomb(int D, int ell, double strength) {
  if (auto e = check_dimension(D)) return *e;
  if (ell < 0) return invalid("l must be >= 0");
  if (D == 1 && ell != 0) return invalid("D = 1 admits only l = 0");
  if (auto e = check_positive("strength", strength)) return *e;

  QuantumSystem s;
  s.id = "coulomb";
  s.title = "D-dimensional Coulomb problem";
  s.source = "Laguerre family, g = c r, g'^2 = c^2";
  s.D = D;
  s.ell = ell;
  s.power_law = true;
  s.params = {{"strength", strength}};
  s.constraints = {"coupling 2 * strength > 0", D == 1 ? "D = 1: n_r >= 1" : "n_r >= 0"};
  const double alpha = 2.0 * ell + D - 2.0;
  const int first = (D == 1) ? 1 : 0;
  auto principal = [=](int nr) { return nr + ell + (D - 1) / 2.0; };

  s.check_index = [first](int nr) -> Expected<int> {
    if (nr < first) return index_error("n_r must be >= " + std::to_string(first));
    return nr - first;
  };
  s.is_bound_fn = [](int) { return true; };
  s.first_index = first;
  s.energy_fn = [=](int nr) { return -strength * strength / (principal(nr) * principal(nr)); };

  const Expr& r = r_var();
  const Expr V = (-2.0 * strength) * expr::pow(r, -1.0);
  s.potential_fn = [V](int) { return V; };
  s.family_fn = [alpha](int nr) { return PolynomialFamily::laguerre(nr, alpha); };
  s.psi_fn = [=](int nr) {
    const double n = principal(nr);
    const auto fam = PolynomialFamily::laguerre(nr, alpha).value();
    Expr lead = ell == 0 ? Expr(1.0) : expr::pow(r, static_cast<double>(ell));
    return lead * expr::exp((-strength / n) * r) * q_of(fam, (2.0 * strength / n) * r);
  };
  s.printed_psi_fn = [=](int nr) -> std::optional<Expr> {
    const double n = principal(nr);
    if (n != std::floor(n)) return std::nullopt;
    auto fam = PolynomialFamily::laguerre(static_cast<int>(n), 2.0 * ell + D - 1.0);
    if (!fam) return std::nullopt;
    Expr lead = ell == 0 ? Expr(1.0) : expr::pow(r, static_cast<double>(ell));
    return lead * expr::exp((-1.0 / n) * r) * q_of(*fam, (2.0 / n) * r);
  };
  s.domain_fn = [=](int nr) {
    const double n = principal(nr);
    StateDomain d;
    d.lo = 0.0;
    d.hi = (30.0 * n * n + 30.0) / strength;
    d.points = grid_points(d.hi, 0.005 * std::max(1.0, n) / strength);
    d.continuum = 0.0;
    return d;
  };
  s.mapping_fn = mapping_on_domain(
      [=](int nr) {
        return transform::make_mapping(Relation::PowerPlain, 4.0 * strength / (2.0 * nr + alpha + 1.0));
      },
      s.domain_fn);
  s.notes = {"psi uses L_{n_r}^{2l+D-2}(2r/n); the printed L_n^{2l+D-1} is kept as printed_psi"};
  if (D == 1) s.notes.push_back("D = 1: alpha = -1, so the index starts at n_r = 1 with n_r - 1 nodes");
  return s;
}

// --- Hypergeometric 2F1 ---------------------------------------------------------

namespace {

Expected<QuantumSystem> hyper_oscillator_impl(int D, int ell, double beta, bool printed) {
  if (auto e = check_dimension(D)) return *e;
  if (ell < 0) return invalid("l must be >= 0");
  const double gamma = ell + D / 2.0;
  auto K = [=](int n) { return -n + beta + 2.0 - gamma; };
  if (!(K(0) > 1.0)) return invalid("beta must exceed l + D/2 - 1 for a normalizable ground state");
  auto Lambda = [=](int n) { return -n * (beta + 1.0) - gamma * K(n) / 2.0; };

  QuantumSystem s;
  s.D = D;
  s.ell = ell;
  s.power_law = true;
  s.potential_depends_on_state = true;
  s.params = {{"beta", beta}};
  s.constraints = {"gamma = l + D/2", "K = -n + beta + 2 - gamma > 1 for state n", "solved on 0 < r < 1"};

  s.check_index = [K](int n) -> Expected<int> {
    if (n < 0) return index_error("state index n must be >= 0");
    if (!(K(n) > 1.0)) return index_error("n = " + std::to_string(n) + " violates -n + beta + 2 - l - D/2 > 1");
    return n;
  };
  s.is_bound_fn = [](int) { return true; };
  s.last_index = static_cast<int>(std::ceil(beta + 1.0 - gamma)) - 1;
  s.energy_fn = [Lambda](int n) { return -4.0 * Lambda(n); };

  const Expr& r = r_var();
  const Expr r2 = expr::pow(r, 2.0);
  const Expr one_minus = 1.0 - r2;
  if (printed) {
    s.potential_fn = [=](int n) {
      const double bracket = -4.0 * n * (beta + 1.0) + (2.0 * ell + D) * (2.0 * ell + D + 2.0 * n - 2.0 * beta - 4.0);
      const double km1 = K(n) - 1.0;
      return r2 * expr::pow(one_minus, -1.0) * (bracket + ((km1 * km1 - 1.0) / 4.0) * expr::pow(one_minus, -1.0));
    };
  } else {
    s.potential_fn = [=](int n) {
      const double km1 = K(n) - 1.0;
      return Expr::add({(km1 * km1 - 1.0) * r2 * expr::pow(one_minus, -2.0),
                        (4.0 * Lambda(n)) * r2 * expr::pow(one_minus, -1.0)});
    };
  }
  s.family_fn = [=](int n) { return PolynomialFamily::hypergeometric(n, beta + 1.0, gamma); };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::hypergeometric(n, beta + 1.0, gamma).value();
    Expr lead = ell == 0 ? Expr(1.0) : expr::pow(r, static_cast<double>(ell));
    return lead * expr::pow(one_minus, K(n) / 2.0) * q_of(fam, r2);
  };
  s.domain_fn = [=](int) {
    StateDomain d;
    d.lo = 0.0;
    d.hi = 1.0;
    d.points = 20000;
    d.left_exponent = gamma - 0.5;
    return d;
  };
  s.mapping_fn = mapping_on_domain([](int) { return transform::make_mapping(Relation::PowerOverG, 2.0); },
                                   s.domain_fn);
  return s;
}

Expected<QuantumSystem> hulthen_impl(int D, double p, double A, double depth, Relation relation) {
  if (auto e = check_dimension(D)) return *e;
  if (auto e = check_positive("p", p)) return *e;
  if (!(A > 0.0 && A <= 1.0)) return invalid("A must lie in (0, 1], got " + fmt(A));
  if (!(depth > 1.0)) return invalid("depth parameter must exceed 1 for a bound ground state, got " + fmt(depth));

  const double b2 = depth * depth;
  auto gamma = [=](int n) { return b2 / (n + 1.0) - n; };
  auto kappa_over_p = [=](int n) { return (b2 - (n + 1.0) * (n + 1.0)) / (2.0 * (n + 1.0)); };

  QuantumSystem s;
  s.D = D;
  s.constraints = {"p > 0", "0 < A <= 1", "state n requires n + 1 <= depth (equality is the E = 0 threshold)"};
  s.check_index = [=](int n) -> Expected<int> {
    if (n < 0) return index_error("state index n must be >= 0");
    if (n + 1.0 > depth) return index_error("n = " + std::to_string(n) + " requires n + 1 <= " + fmt(depth));
    return n;
  };
  s.is_bound_fn = [=](int n) { return n + 1.0 < depth; };
  s.last_index = static_cast<int>(std::floor(depth)) - 1;
  s.energy_fn = [=](int n) { return -p * p * kappa_over_p(n) * kappa_over_p(n); };

  const Expr& r = r_var();
  const Expr g = A * expr::exp(-p * r);
  const Expr V = with_background((-b2 * p * p) * g * expr::pow(1.0 - g, -1.0), D);
  s.potential_fn = [V](int) { return V; };
  s.family_fn = [=](int n) { return PolynomialFamily::hypergeometric(n, 1.0 + b2 / (n + 1.0), gamma(n)); };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::hypergeometric(n, 1.0 + b2 / (n + 1.0), gamma(n)).value();
    return radial_prefactor(D) * expr::pow(g, kappa_over_p(n)) * (1.0 - g) * q_of(fam, g);
  };
  s.domain_fn = [=](int n) {
    const double kappa = p * std::max(kappa_over_p(n), 1e-3);
    StateDomain d;
    d.lo = std::log(A) / p;
    d.hi = d.lo + std::min(40.0 / kappa, 4000.0 / p) + 5.0 / p;
    d.points = grid_points(d.hi - d.lo, 0.01 / (p * std::max(1.0, b2)));
    d.continuum = 0.0;
    return d;
  };
  s.mapping_fn = mapping_on_domain([=](int) { return transform::make_mapping(relation, p, A); }, s.domain_fn);
  s.notes = {"the condition alpha + beta - gamma + 1 = +-1 is read as 2F1 exponent K = alpha + beta + 1 - gamma = 2",
             "depth^2 = (n+1)(n+gamma), so gamma = depth^2/(n+1) - n and beta = 1 + depth^2/(n+1)",
             "solved from the pole r = ln(A)/p outward"};
  return s;
}

}  // namespace

Expected<QuantumSystem> hyper_oscillator(int D, int ell, double beta) {
  auto s = hyper_oscillator_impl(D, ell, beta, true);
  if (!s) return s;
  s->id = "hyper_oscillator";
  s->title = "Confined oscillator from 2F1 (printed potential)";
  s->source = "2F1 family, g = r^2, g'^2/g = 4";
  s->status = Status::PaperAmbiguous;
  s->notes = {"potential taken verbatim from the table; the energy -4 Lambda is reproduced by the transformation but "
              "the potential carries an extra 1/4 on the (K-1)^2 - 1 term and lacks 1/2 on the (2l+D)(...) term",
              "see hyper_oscillator_rederived"};
  return s;
}

Expected<QuantumSystem> hyper_oscillator_rederived(int D, int ell, double beta) {
  auto s = hyper_oscillator_impl(D, ell, beta, false);
  if (!s) return s;
  s->id = "hyper_oscillator_rederived";
  s->title = "Confined oscillator from 2F1 (rederived potential)";
  s->source = "2F1 family, g = r^2, g'^2/g = 4";
  s->variant_of = "hyper_oscillator";
  s->notes = {"V = ((K-1)^2 - 1) r^2/(1-r^2)^2 + 4 Lambda r^2/(1-r^2) with Lambda = -n(beta+1) - gamma K/2",
              "the potential depends on the state index through K and Lambda"};
  return s;
}

Expected<QuantumSystem> hulthen_like(int D, double p, double A, double beta1) {
  auto s = hulthen_impl(D, p, A, beta1, Relation::PowerOverSquare);
  if (!s) return s;
  s->id = "hulthen_like";
  s->title = "Hulthen-like well";
  s->source = "2F1 family, g = A exp(-p r), g'^2/g^2 = p^2";
  s->params = {{"p", p}, {"A", A}, {"beta1", beta1}};
  return s;
}

Expected<QuantumSystem> hulthen_like_second_derivative(int D, double p, double A, double delta) {
  auto s = hulthen_impl(D, p, A, delta, Relation::SecondDeriv);
  if (!s) return s;
  s->id = "hulthen_like_second_derivative";
  s->title = "Hulthen-like well from g''^2/g'^2 = p^2";
  s->source = "2F1 family, g = A exp(-p r), g''^2/g'^2 = p^2";
  s->params = {{"p", p}, {"A", A}, {"delta", delta}};
  s->alias_of = "hulthen_like";
  s->notes.push_back("the printed energy lacks the outer square; the squared form is the one the potential supports");
  return s;
}

Expected<QuantumSystem> eckart_like(int D, double p, double A, double gamma1) {
  if (auto e = check_dimension(D)) return *e;
  if (auto e = check_positive("p", p)) return *e;
  if (!(A > 0.0 && A <= 1.0)) return invalid("A must lie in (0, 1], got " + fmt(A));
  if (!std::isfinite(gamma1)) return invalid("gamma1 must be finite");

  const double g2 = gamma1 * gamma1;
  auto b = [=](int n) { return (n + 1.0 - g2) / (n + 1.0); };
  auto rate = [=](int n) { return (g2 + (n + 1.0) * (n + 1.0)) / (2.0 * (n + 1.0)); };

  QuantumSystem s;
  s.id = "eckart_like";
  s.title = "Eckart-like barrier (printed energies)";
  s.source = "2F1 family, g = 1 - A exp(-p r), g'^2/(1-g)^2 = p^2";
  s.D = D;
  s.status = Status::PaperAmbiguous;
  s.params = {{"p", p}, {"A", A}, {"gamma1", gamma1}};
  s.constraints = {"p > 0", "0 < A <= 1", "-beta(n+1) + n + 1 = gamma1^2", "2F1 third parameter 2"};
  s.check_index = [](int n) -> Expected<int> {
    if (n < 0) return index_error("state index n must be >= 0");
    return n;
  };
  s.is_bound_fn = [](int) { return true; };
  s.energy_fn = [=](int n) { return -p * p * rate(n) * rate(n); };

  const Expr& r = r_var();
  const Expr decay = A * expr::exp(-p * r);
  const Expr V = with_background((p * p * g2) * decay * expr::pow(1.0 - decay, -1.0), D);
  s.potential_fn = [V](int) { return V; };
  s.family_fn = [=](int n) { return PolynomialFamily::hypergeometric(n, b(n), 2.0); };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::hypergeometric(n, b(n), 2.0).value();
    return radial_prefactor(D) * (1.0 - decay) * expr::exp((-p * rate(n)) * r) *
           q_of(fam, 1.0 - expr::exp(-p * r));
  };
  s.domain_fn = [=](int) {
    StateDomain d;
    d.lo = std::log(A) / p;
    d.hi = d.lo + 60.0 / p;
    d.points = grid_points(d.hi - d.lo, 0.005 / p);
    d.continuum = 0.0;
    return d;
  };
  s.mapping_fn = mapping_on_domain([=](int) { return transform::make_mapping(Relation::OneMinusG, p, A); },
                                   s.domain_fn);
  s.notes = {"the printed formulas are consistent with gamma = 2 rather than the stated gamma = 1",
             "with gamma = 2 the transformation gives a repulsive potential whose template grows like "
             "exp(+p rate r), so no bound state exists; the printed psi is kept verbatim"};
  return s;
}

// --- Associated Legendre and Jacobi ---------------------------------------------

Expected<QuantumSystem> trig_poschl_teller(int D, double p, int m) {
  if (auto e = check_dimension(D)) return *e;
  if (auto e = check_positive("p", p)) return *e;
  if (m < 1) return invalid("order m must be an integer >= 1, got " + std::to_string(m));

  QuantumSystem s;
  s.id = "trig_poschl_teller";
  s.title = "Trigonometric Poschl-Teller well";
  s.source = "associated Legendre family, g = sin(p r), g'^2/(1-g^2) = p^2";
  s.D = D;
  s.params = {{"p", p}, {"m", static_cast<double>(m)}};
  s.constraints = {"p > 0", "integer m >= 1", "state n >= m", "cell -pi/(2p) < r < pi/(2p)"};
  s.check_index = [m](int n) -> Expected<int> {
    if (n < m) return index_error("state index n must be >= m = " + std::to_string(m));
    return n - m;
  };
  s.is_bound_fn = [](int) { return true; };
  s.first_index = m;
  s.energy_fn = [=](int n) { return -p * p * (m * m - n * (n + 1.0) - 0.5); };

  const Expr& r = r_var();
  const Expr V = with_background((p * p * (m * m - 0.25)) * expr::pow(expr::tan(p * r), 2.0), D);
  s.potential_fn = [V](int) { return V; };
  s.family_fn = [m](int n) { return PolynomialFamily::legendre(n, m); };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::legendre(n, m).value();
    return radial_prefactor(D) * expr::pow(expr::cos(p * r), 0.5) *
           legendre_of(fam, expr::sin(p * r), expr::cos(p * r), m);
  };
  s.domain_fn = [=](int n) {
    StateDomain d;
    d.lo = -std::numbers::pi / (2.0 * p);
    d.hi = std::numbers::pi / (2.0 * p);
    d.points = grid_points(d.hi - d.lo, 0.005 / (p * (n + 1.0)));
    return d;
  };
  s.mapping_fn = mapping_on_domain([=](int) { return transform::make_mapping(Relation::OneMinusG2, p); },
                                   s.domain_fn);
  s.notes = {"the state n has n - m nodes on the full cell; the half cell (0, pi/(2p)) would lose the states of "
             "one parity"};
  return s;
}

Expected<QuantumSystem> sech_poschl_teller(int D, double p, int n) {
  if (auto e = check_dimension(D)) return *e;
  if (auto e = check_positive("p", p)) return *e;
  if (n < 2) return invalid("depth n must be an integer >= 2, got " + std::to_string(n));

  QuantumSystem s;
  s.id = "sech_poschl_teller";
  s.title = "Hyperbolic Poschl-Teller well";
  s.source = "associated Legendre family, g = tanh(p r), g'^2/(1-g^2)^2 = p^2";
  s.D = D;
  s.params = {{"p", p}, {"n", static_cast<double>(n)}};
  s.constraints = {"p > 0", "integer depth n >= 2", "state index m with 2 <= m <= n (m = 1 is the E = 0 threshold)"};
  s.check_index = [n](int m) -> Expected<int> {
    if (m < 1 || m > n) return index_error("state index m must satisfy 1 <= m <= n = " + std::to_string(n));
    return n - m;
  };
  s.is_bound_fn = [](int m) { return m >= 2; };
  s.first_index = 1;
  s.last_index = n;
  s.energy_fn = [p](int m) { return -(m - 1.0) * (m - 1.0) * p * p; };

  const Expr& r = r_var();
  const Expr V = with_background((-n * (n - 1.0) * p * p) * expr::pow(expr::sech(p * r), 2.0), D);
  s.potential_fn = [V](int) { return V; };
  s.family_fn = [n](int m) { return PolynomialFamily::legendre(n - 1, m - 1); };
  s.psi_fn = [=](int m) {
    const auto fam = PolynomialFamily::legendre(n - 1, m - 1).value();
    return radial_prefactor(D) * legendre_of(fam, expr::tanh(p * r), expr::sech(p * r), m - 1);
  };
  s.domain_fn = [=](int m) {
    const double kappa = std::max(m - 1.0, 0.05) * p;
    const double half = std::min(40.0 / kappa, 800.0 / p) + 5.0 / p;
    StateDomain d;
    d.lo = -half;
    d.hi = half;
    d.points = grid_points(2.0 * half, 0.01 / (p * n));
    d.continuum = 0.0;
    return d;
  };
  s.mapping_fn = mapping_on_domain([=](int) { return transform::make_mapping(Relation::OneMinusG2Sq, p); },
                                   s.domain_fn);
  s.notes = {"n sets the depth and m indexes states; energies rise with the node count n - m, so they fall as m grows"};
  return s;
}

namespace {

Expected<QuantumSystem> jacobi_common(int D, double p, double alpha, double beta) {
  if (auto e = check_dimension(D)) return *e;
  if (auto e = check_positive("p", p)) return *e;
  if (auto e = check_positive("alpha", alpha)) return *e;
  if (auto e = check_positive("beta", beta)) return *e;
  QuantumSystem s;
  s.D = D;
  s.params = {{"p", p}, {"alpha", alpha}, {"beta", beta}};
  s.check_index = [](int n) -> Expected<int> {
    if (n < 0) return index_error("state index n must be >= 0");
    return n;
  };
  s.is_bound_fn = [](int) { return true; };
  s.family_fn = [=](int n) { return PolynomialFamily::jacobi(n, alpha, beta); };
  return s;
}

Expected<QuantumSystem> trig_scarf_impl(int D, double p, double alpha, double beta, bool printed) {
  SOLVAGEN_TRY(s, jacobi_common(D, p, alpha, beta));
  s.constraints = {"p > 0", "alpha > 0", "beta > 0", "cell -pi/(2p) < r < pi/(2p)"};
  const double a2 = alpha * alpha, b2 = beta * beta;
  if (printed) {
    s.energy_fn = [=](int n) {
      return 0.25 * ((alpha - beta) * (alpha - beta) - 4.0 * n * (n + alpha + beta + 1.0) - 2.0 * (alpha + beta) - 2.0) *
             p * p;
    };
  } else {
    s.energy_fn = [=](int n) {
      return p * p * ((alpha + 1.0) * (beta + 1.0) / 2.0 + n * (n + alpha + beta + 1.0) - (a2 + b2) / 4.0);
    };
  }
  const Expr& r = r_var();
  const Expr t2 = expr::pow(expr::tan(p * r), 2.0);
  const Expr sec_tan = expr::pow(expr::cos(p * r), -1.0) * expr::tan(p * r);
  const double tan2_coeff = printed ? (a2 - b2) / 2.0 : (a2 + b2) / 2.0 - 0.25;
  const double sec_tan_coeff = printed ? (a2 + b2) / 2.0 : (a2 - b2) / 2.0;
  const Expr V = with_background(Expr::add({(p * p * tan2_coeff) * t2, (p * p * sec_tan_coeff) * sec_tan}), D);
  s.potential_fn = [V](int) { return V; };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::jacobi(n, alpha, beta).value();
    const Expr sn = expr::sin(p * r);
    return radial_prefactor(D) * expr::pow(expr::cos(p * r), (alpha + beta + 1.0) / 2.0) *
           expr::pow((1.0 + sn) / (1.0 - sn), (beta - alpha) / 4.0) * q_of(fam, sn);
  };
  s.domain_fn = [=](int n) {
    StateDomain d;
    d.lo = -std::numbers::pi / (2.0 * p);
    d.hi = std::numbers::pi / (2.0 * p);
    d.points = grid_points(d.hi - d.lo, 0.005 / (p * (n + alpha + beta + 1.0)));
    return d;
  };
  s.mapping_fn = mapping_on_domain([=](int) { return transform::make_mapping(Relation::OneMinusG2, p); },
                                   s.domain_fn);
  return s;
}

Expected<QuantumSystem> rosen_morse_impl(int D, double p, double alpha, double beta, bool printed) {
  SOLVAGEN_TRY(s, jacobi_common(D, p, alpha, beta));
  s.constraints = {"p > 0", "alpha > 0", "beta > 0"};
  s.potential_depends_on_state = true;
  const double sign = printed ? 1.0 : -1.0;
  s.energy_fn = [=](int n) {
    return sign * 0.25 * ((alpha - beta) * (alpha - beta) - 4.0 * n * (n + alpha + beta + 1.0) - 2.0 * (alpha + beta)) *
           p * p;
  };
  auto c3sq = [=](int n) {
    const double q = 2.0 * n + alpha + beta + 1.0;
    return 0.25 * (q * q - 1.0) * p * p;
  };
  const double c4sq = 0.5 * (alpha * alpha - beta * beta) * p * p;
  const Expr& r = r_var();
  const Expr th = expr::tanh(p * r);
  s.potential_fn = [=](int n) { return with_background(Expr::add({c3sq(n) * expr::pow(th, 2.0), c4sq * th}), D); };
  s.psi_fn = [=](int n) {
    const auto fam = PolynomialFamily::jacobi(n, alpha, beta).value();
    return radial_prefactor(D) * expr::pow(expr::sech(p * r), (alpha + beta) / 2.0) *
           expr::exp((-(alpha - beta) / 2.0 * p) * r) * q_of(fam, th);
  };
  s.domain_fn = [=](int n) {
    StateDomain d;
    d.lo = -(40.0 / (beta * p) + 5.0 / p);
    d.hi = 40.0 / (alpha * p) + 5.0 / p;
    d.points = grid_points(d.hi - d.lo, 0.005 / (p * (n + alpha + beta + 1.0)));
    d.continuum = std::min(c3sq(n) + c4sq, c3sq(n) - c4sq);
    return d;
  };
  s.mapping_fn = mapping_on_domain([=](int) { return transform::make_mapping(Relation::OneMinusG2Sq, p); },
                                   s.domain_fn);
  return s;
}

}  // namespace

Expected<QuantumSystem> trig_scarf(int D, double p, double alpha, double beta) {
  auto s = trig_scarf_impl(D, p, alpha, beta, true);
  if (!s) return s;
  s->id = "trig_scarf";
  s->title = "Trigonometric Scarf well (printed potential and energy)";
  s->source = "Jacobi family, g = sin(p r), g'^2/(1-g^2) = p^2";
  s->status = Status::PaperAmbiguous;
  s->notes = {"potential and energy taken verbatim; the transformation gives the tan^2 and sec tan coefficients "
              "swapped, a -1/4 on tan^2, and the energy with opposite sign",
              "see trig_scarf_rederived"};
  return s;
}

Expected<QuantumSystem> trig_scarf_rederived(int D, double p, double alpha, double beta) {
  auto s = trig_scarf_impl(D, p, alpha, beta, false);
  if (!s) return s;
  s->id = "trig_scarf_rederived";
  s->title = "Trigonometric Scarf well (rederived)";
  s->source = "Jacobi family, g = sin(p r), g'^2/(1-g^2) = p^2";
  s->variant_of = "trig_scarf";
  s->notes = {"V = p^2[((alpha^2+beta^2)/2 - 1/4) tan^2 + ((alpha^2-beta^2)/2) sec tan]",
              "E = p^2[(alpha+1)(beta+1)/2 + n(n+alpha+beta+1) - (alpha^2+beta^2)/4]",
              "alpha = beta = m reproduces trig_poschl_teller"};
  return s;
}

Expected<QuantumSystem> rosen_morse(int D, double p, double alpha, double beta) {
  auto s = rosen_morse_impl(D, p, alpha, beta, true);
  if (!s) return s;
  s->id = "rosen_morse";
  s->title = "Rosen-Morse well (printed energy)";
  s->source = "Jacobi family, g = tanh(p r), g'^2/(1-g^2)^2 = p^2";
  s->status = Status::PaperAmbiguous;
  s->notes = {"potential verbatim and correct, but it depends on n through c3; the printed energy has the "
              "wrong overall sign (alpha = 3, beta = 1, n = 0 prints -1, below the potential minimum)",
              "see rosen_morse_rederived"};
  return s;
}

Expected<QuantumSystem> rosen_morse_rederived(int D, double p, double alpha, double beta) {
  auto s = rosen_morse_impl(D, p, alpha, beta, false);
  if (!s) return s;
  s->id = "rosen_morse_rederived";
  s->title = "Rosen-Morse well (rederived energy)";
  s->source = "Jacobi family, g = tanh(p r), g'^2/(1-g^2)^2 = p^2";
  s->variant_of = "rosen_morse";
  s->notes = {"E = p^2[n(n+alpha+beta+1) - ((alpha-beta)^2 - 2(alpha+beta))/4]",
              "the potential depends on the state index through c3"};
  return s;
}

// --- QuantumSystem --------------------------------------------------------------

const char* status_name(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::PaperAmbiguous: return "paper_ambiguous";
    case Status::Unverified: return "unverified";
  }
  return "?";
}

Expected<double> QuantumSystem::energy(int index) const {
  if (auto ok = check_index(index); !ok) return ok.error();
  return energy_fn(index);
}

Expected<Expr> QuantumSystem::potential(int index) const {
  if (auto ok = check_index(index); !ok) return ok.error();
  return potential_fn(index);
}

Expected<Expr> QuantumSystem::psi(int index) const {
  if (auto ok = check_index(index); !ok) return ok.error();
  return psi_fn(index);
}

Expected<PolynomialFamily> QuantumSystem::family(int index) const {
  if (auto ok = check_index(index); !ok) return ok.error();
  return family_fn(index);
}

Expected<transform::Mapping> QuantumSystem::mapping(int index) const {
  if (auto ok = check_index(index); !ok) return ok.error();
  return mapping_fn(index);
}

Expected<StateDomain> QuantumSystem::domain(int index) const {
  if (auto ok = check_index(index); !ok) return ok.error();
  return domain_fn(index);
}

std::optional<Expr> QuantumSystem::printed_psi(int index) const {
  if (!printed_psi_fn || !check_index(index)) return std::nullopt;
  return printed_psi_fn(index);
}

std::vector<State> QuantumSystem::states(int n_max) const {
  std::vector<State> out;
  for (int i = first_index; i <= std::min(n_max, last_index); ++i) {
    auto nodes = check_index(i);
    if (!nodes || !is_bound_fn(i)) continue;
    out.push_back({i, *nodes, energy_fn(i)});
  }
  return out;
}

Expected<Expr> QuantumSystem::table_potential(int index) const {
  SOLVAGEN_TRY(V, potential(index));
  const double cf = ell * (ell + D - 2.0);
  if (cf == 0.0) return V;
  return Expr::add({V, Expr::mul({Expr::constant(cf), expr::pow(r_var(), -2.0)})});
}

// --- Registry --------------------------------------------------------------------

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> list = {
      {"morse_like", "exponential well A c^2 e^{-cr}(A e^{-cr}/4 - beta), Laguerre", false,
       {{"c", 1.0, "decay constant of g = A exp(-c r)"}, {"beta", 5.5, "well depth; states need beta >= n + 1/2"},
        {"A", 1.0, "scale of g"}}},
      {"morse_like_second_derivative", "alias of morse_like through g''^2/g'^2 = c^2", false,
       {{"c", 1.0, "decay constant"}, {"beta", 5.5, "well depth"}, {"A", 1.0, "scale of g"}}},
      {"harmonic_oscillator", "isotropic oscillator omega^2 r^2/4, Laguerre", true,
       {{"omega", 1.0, "frequency"}}},
      {"coulomb", "Coulomb -2 s/r, Laguerre", true, {{"strength", 1.0, "multiplier s of the coupling 2"}}},
      {"hyper_oscillator", "confined oscillator on (0,1), 2F1, printed potential", true,
       {{"beta", 6.0, "second 2F1 parameter minus one"}}},
      {"hyper_oscillator_rederived", "confined oscillator on (0,1), 2F1, rederived potential", true,
       {{"beta", 6.0, "second 2F1 parameter minus one"}}},
      {"hulthen_like", "Hulthen-like -beta1^2 p^2 g/(1-g), g = A e^{-pr}, 2F1", false,
       {{"p", 1.0, "decay constant"}, {"A", 1.0, "scale of g, 0 < A <= 1"}, {"beta1", 3.0, "depth parameter"}}},
      {"hulthen_like_second_derivative", "alias of hulthen_like through g''^2/g'^2 = p^2", false,
       {{"p", 1.0, "decay constant"}, {"A", 1.0, "scale of g, 0 < A <= 1"}, {"delta", 3.0, "depth parameter"}}},
      {"eckart_like", "repulsive p^2 gamma1^2 A e^{-pr}/(1 - A e^{-pr}), 2F1, printed energies", false,
       {{"p", 1.0, "decay constant"}, {"A", 1.0, "scale, 0 < A <= 1"}, {"gamma1", 1.0, "barrier parameter"}}},
      {"trig_poschl_teller", "p^2 (m^2 - 1/4) tan^2(p r), associated Legendre", false,
       {{"p", 1.0, "inverse cell width"}, {"m", 1.0, "integer order m >= 1"}}},
      {"sech_poschl_teller", "-n(n-1) p^2 sech^2(p r), associated Legendre", false,
       {{"p", 1.0, "inverse width"}, {"n", 4.0, "integer depth n >= 2"}}},
      {"trig_scarf", "tan^2 + sec tan well, Jacobi, printed potential and energy", false,
       {{"p", 1.0, "inverse cell width"}, {"alpha", 2.0, "Jacobi alpha > 0"}, {"beta", 1.0, "Jacobi beta > 0"}}},
      {"trig_scarf_rederived", "tan^2 + sec tan well, Jacobi, rederived", false,
       {{"p", 1.0, "inverse cell width"}, {"alpha", 2.0, "Jacobi alpha > 0"}, {"beta", 1.0, "Jacobi beta > 0"}}},
      {"rosen_morse", "c3^2 tanh^2 + c4^2 tanh, Jacobi, printed energy", false,
       {{"p", 1.0, "inverse width"}, {"alpha", 3.0, "Jacobi alpha > 0"}, {"beta", 1.0, "Jacobi beta > 0"}}},
      {"rosen_morse_rederived", "c3^2 tanh^2 + c4^2 tanh, Jacobi, rederived energy", false,
       {{"p", 1.0, "inverse width"}, {"alpha", 3.0, "Jacobi alpha > 0"}, {"beta", 1.0, "Jacobi beta > 0"}}},
  };
  return list;
}

const CatalogEntry* find_entry(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

Expected<QuantumSystem> build(std::string_view id, int D, int ell, const std::map<std::string, double>& params) {
  const CatalogEntry* entry = find_entry(id);
  if (entry == nullptr) return make_error(ErrorCode::UnknownIdentifier, "unknown system '" + std::string(id) + "'");
  if (!entry->uses_ell && ell != 0) {
    return invalid(std::string(id) + " is not a power-law system; l is fixed to 0");
  }
  std::map<std::string, double> p;
  for (const auto& spec : entry->params) p[spec.name] = spec.default_value;
  for (const auto& [k, v] : params) {
    if (!p.count(k)) return invalid("unknown parameter '" + k + "' for " + std::string(id));
    if (!std::isfinite(v)) return invalid("parameter '" + k + "' must be finite");
    p[k] = v;
  }
  auto integer = [&](const std::string& k) -> Expected<int> {
    const double v = p.at(k);
    if (v != std::floor(v) || std::abs(v) > 1e6) return invalid("parameter '" + k + "' must be an integer");
    return static_cast<int>(v);
  };

  if (id == "morse_like") return morse_like(D, p["c"], p["beta"], p["A"]);
  if (id == "morse_like_second_derivative") return morse_like_second_derivative(D, p["c"], p["beta"], p["A"]);
  if (id == "harmonic_oscillator") return harmonic_oscillator(D, ell, p["omega"]);
  if (id == "coulomb") return coulomb(D, ell, p["strength"]);
  if (id == "hyper_oscillator") return hyper_oscillator(D, ell, p["beta"]);
  if (id == "hyper_oscillator_rederived") return hyper_oscillator_rederived(D, ell, p["beta"]);
  if (id == "hulthen_like") return hulthen_like(D, p["p"], p["A"], p["beta1"]);
  if (id == "hulthen_like_second_derivative") return hulthen_like_second_derivative(D, p["p"], p["A"], p["delta"]);
  if (id == "eckart_like") return eckart_like(D, p["p"], p["A"], p["gamma1"]);
  if (id == "trig_poschl_teller") {
    SOLVAGEN_TRY(m, integer("m"));
    return trig_poschl_teller(D, p["p"], m);
  }
  if (id == "sech_poschl_teller") {
    SOLVAGEN_TRY(n, integer("n"));
    return sech_poschl_teller(D, p["p"], n);
  }
  if (id == "trig_scarf") return trig_scarf(D, p["p"], p["alpha"], p["beta"]);
  if (id == "trig_scarf_rederived") return trig_scarf_rederived(D, p["p"], p["alpha"], p["beta"]);
  if (id == "rosen_morse") return rosen_morse(D, p["p"], p["alpha"], p["beta"]);
  return rosen_morse_rederived(D, p["p"], p["alpha"], p["beta"]);
}

}  // namespace solvagen::catalog
