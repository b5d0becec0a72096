#include "solvagen/polys.hpp"

#include <cmath>
#include <cstdio>

namespace solvagen::polys {

using expr::Expr;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Poly = std::vector<double>;

Poly times_x(const Poly& p) {
  Poly out(p.size() + 1, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k];
  return out;
}

// a*p + b*q, padding to the longer operand.
Poly combine(double a, const Poly& p, double b, const Poly& q) {
  Poly out(std::max(p.size(), q.size()), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) out[k] += a * p[k];
  for (std::size_t k = 0; k < q.size(); ++k) out[k] += b * q[k];
  return out;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0};
  Poly out(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = static_cast<double>(k) * p[k];
  return out;
}

struct Horner {
  double value = 0.0, first = 0.0, second = 0.0;
};

Horner horner(const Poly& p, double x) {
  Horner h;
  for (std::size_t k = p.size(); k-- > 0;) {
    h.second = h.second * x + 2.0 * h.first;
    h.first = h.first * x + h.value;
    h.value = h.value * x + p[k];
  }
  return h;
}

double factorial_ratio(int lo_n, int hi_n) {
  // (lo_n)! / (hi_n)!  for lo_n <= hi_n
  double r = 1.0;
  for (int k = lo_n + 1; k <= hi_n; ++k) r /= k;
  return r;
}

double double_factorial_odd(int m) {
  // (2m-1)!!
  double r = 1.0;
  for (int k = 1; k <= 2 * m - 1; k += 2) r *= k;
  return r;
}

Poly laguerre_coefficients(const AssociatedLaguerre& f) {
  Poly prev{1.0};
  if (f.n == 0) return prev;
  Poly cur{1.0 + f.alpha, -1.0};
  for (int k = 1; k < f.n; ++k) {
    Poly next = combine(2.0 * k + 1.0 + f.alpha, cur, -1.0, times_x(cur));
    next = combine(1.0, next, -(k + f.alpha), prev);
    for (double& c : next) c /= (k + 1.0);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly hypergeometric_coefficients(const Hypergeometric2F1& f) {
  // (c+k) F_{k+1} = (2k + c - (b+k) x) F_k + k (x - 1) F_{k-1}
  const double b = f.beta, c = f.gamma;
  Poly prev{1.0};
  if (f.n == 0) return prev;
  Poly cur{1.0, -b / c};
  for (int k = 1; k < f.n; ++k) {
    Poly next = combine(2.0 * k + c, cur, -(b + k), times_x(cur));
    next = combine(1.0, next, static_cast<double>(k), times_x(prev));
    next = combine(1.0, next, -static_cast<double>(k), prev);
    for (double& v : next) v /= (c + k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly legendre_p_coefficients(int n) {
  Poly prev{1.0};
  if (n == 0) return prev;
  Poly cur{0.0, 1.0};
  for (int k = 1; k < n; ++k) {
    Poly next = combine((2.0 * k + 1.0) / (k + 1.0), times_x(cur), -static_cast<double>(k) / (k + 1.0), prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly associated_legendre_coefficients(const AssociatedLegendre& f) {
  const int mu = std::abs(f.m);
  Poly p = legendre_p_coefficients(f.n);
  for (int i = 0; i < mu; ++i) p = derivative(p);
  double factor = (mu % 2 == 0) ? 1.0 : -1.0;  // Condon-Shortley
  if (f.m < 0) factor *= ((mu % 2 == 0) ? 1.0 : -1.0) * factorial_ratio(f.n - mu, f.n + mu);
  for (double& c : p) c *= factor;
  return p;
}

struct JacobiStep {
  double a1, a2, a3, a4;
};

JacobiStep jacobi_step(int k, double a, double b) {
  const double s = 2.0 * k + a + b;
  return {2.0 * (k + 1) * (k + a + b + 1) * s, (s + 1) * (a * a - b * b), s * (s + 1) * (s + 2),
          2.0 * (k + a) * (k + b) * (s + 2)};
}

Poly jacobi_coefficients(const Jacobi& f) {
  const double a = f.alpha, b = f.beta;
  Poly prev{1.0};
  if (f.n == 0) return prev;
  Poly cur{(a + 1.0) - 0.5 * (a + b + 2.0), 0.5 * (a + b + 2.0)};
  for (int k = 1; k < f.n; ++k) {
    const auto st = jacobi_step(k, a, b);
    Poly next = combine(st.a2, cur, st.a3, times_x(cur));
    next = combine(1.0, next, -st.a4, prev);
    for (double& c : next) c /= st.a1;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Expr poly_to_expr(const Poly& p, const Expr& x) {
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (k == 0) {
      terms.push_back(Expr::constant(p[k]));
    } else {
      terms.push_back(Expr::mul({Expr::constant(p[k]), k == 1 ? x : Expr::pow(x, static_cast<double>(k))}));
    }
  }
  return Expr::add(std::move(terms));
}

}  // namespace

const char* kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::AssociatedLaguerre: return "associated_laguerre";
    case FamilyKind::Hypergeometric2F1: return "hypergeometric_2f1";
    case FamilyKind::AssociatedLegendre: return "associated_legendre";
    case FamilyKind::Jacobi: return "jacobi";
  }
  return "?";
}

Expected<PolynomialFamily> PolynomialFamily::make(Variant v) {
  auto invalid = [](std::string what) { return make_error(ErrorCode::InvalidParameter, std::move(what)); };
  std::optional<Error> problem = std::visit(
      overloaded{
          [&](const AssociatedLaguerre& f) -> std::optional<Error> {
            if (f.n < 0) return invalid("Laguerre degree must be >= 0");
            if (!std::isfinite(f.alpha)) return invalid("Laguerre alpha must be finite");
            return std::nullopt;
          },
          [&](const Hypergeometric2F1& f) -> std::optional<Error> {
            if (f.n < 0) return invalid("2F1 degree must be >= 0");
            if (!std::isfinite(f.beta) || !std::isfinite(f.gamma)) return invalid("2F1 parameters must be finite");
            for (int k = 0; k < f.n; ++k) {
              if (f.gamma + k == 0.0) {
                return invalid("2F1 gamma = " + fmt(f.gamma) + " is a non-positive integer >= -(n-1)");
              }
            }
            return std::nullopt;
          },
          [&](const AssociatedLegendre& f) -> std::optional<Error> {
            if (f.n < 0) return invalid("Legendre degree must be >= 0");
            if (std::abs(f.m) > f.n) return invalid("associated Legendre requires |m| <= n");
            return std::nullopt;
          },
          [&](const Jacobi& f) -> std::optional<Error> {
            if (f.n < 0) return invalid("Jacobi degree must be >= 0");
            if (!std::isfinite(f.alpha) || !std::isfinite(f.beta)) return invalid("Jacobi parameters must be finite");
            for (int k = 1; k < f.n; ++k) {
              if (jacobi_step(k, f.alpha, f.beta).a1 == 0.0) {
                return invalid("Jacobi recurrence is singular for alpha+beta = " + fmt(f.alpha + f.beta));
              }
            }
            return std::nullopt;
          },
      },
      v);
  if (problem) return *problem;
  return PolynomialFamily(std::move(v));
}

FamilyKind PolynomialFamily::kind() const { return static_cast<FamilyKind>(v_.index()); }

int PolynomialFamily::degree() const {
  return std::visit([](const auto& f) { return f.n; }, v_);
}

std::string PolynomialFamily::describe() const {
  return std::visit(overloaded{
                        [](const AssociatedLaguerre& f) {
                          return "L_" + std::to_string(f.n) + "^(" + fmt(f.alpha) + ")";
                        },
                        [](const Hypergeometric2F1& f) {
                          return "2F1(-" + std::to_string(f.n) + ", " + fmt(f.beta) + "; " + fmt(f.gamma) + ")";
                        },
                        [](const AssociatedLegendre& f) {
                          return "P_" + std::to_string(f.n) + "^" + std::to_string(f.m);
                        },
                        [](const Jacobi& f) {
                          return "P_" + std::to_string(f.n) + "^(" + fmt(f.alpha) + "," + fmt(f.beta) + ")";
                        },
                    },
                    v_);
}

Expected<double> eval_poly(const PolynomialFamily& fam, double x) {
  return std::visit(
      overloaded{
          [&](const AssociatedLaguerre& f) -> Expected<double> {
            double prev = 1.0;
            if (f.n == 0) return prev;
            double cur = 1.0 + f.alpha - x;
            for (int k = 1; k < f.n; ++k) {
              const double next = ((2.0 * k + 1.0 + f.alpha - x) * cur - (k + f.alpha) * prev) / (k + 1.0);
              prev = cur;
              cur = next;
            }
            return cur;
          },
          [&](const Hypergeometric2F1& f) -> Expected<double> {
            const double b = f.beta, c = f.gamma;
            double prev = 1.0;
            if (f.n == 0) return prev;
            double cur = 1.0 - b * x / c;
            for (int k = 1; k < f.n; ++k) {
              const double next = ((2.0 * k + c - (b + k) * x) * cur + k * (x - 1.0) * prev) / (c + k);
              prev = cur;
              cur = next;
            }
            return cur;
          },
          [&](const AssociatedLegendre& f) -> Expected<double> {
            const int mu = std::abs(f.m);
            const double s = 1.0 - x * x;
            if (mu % 2 == 1 && s < 0.0) {
              return make_error(ErrorCode::Domain, "odd-order associated Legendre function needs |x| <= 1");
            }
            double pmm = ((mu % 2 == 0) ? 1.0 : -1.0) * double_factorial_odd(mu) * std::pow(s, 0.5 * mu);
            double result = pmm;
            if (f.n > mu) {
              double prev = pmm;
              double cur = x * (2.0 * mu + 1.0) * pmm;
              for (int l = mu + 1; l < f.n; ++l) {
                const double next = ((2.0 * l + 1.0) * x * cur - (l + mu) * prev) / (l - mu + 1.0);
                prev = cur;
                cur = next;
              }
              result = cur;
            }
            if (f.m < 0) result *= ((mu % 2 == 0) ? 1.0 : -1.0) * factorial_ratio(f.n - mu, f.n + mu);
            return result;
          },
          [&](const Jacobi& f) -> Expected<double> {
            const double a = f.alpha, b = f.beta;
            double prev = 1.0;
            if (f.n == 0) return prev;
            double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
            for (int k = 1; k < f.n; ++k) {
              const auto st = jacobi_step(k, a, b);
              const double next = ((st.a2 + st.a3 * x) * cur - st.a4 * prev) / st.a1;
              prev = cur;
              cur = next;
            }
            return cur;
          },
      },
      fam.variant());
}

std::vector<double> coefficients(const PolynomialFamily& fam) {
  return std::visit(overloaded{
                        [](const AssociatedLaguerre& f) { return laguerre_coefficients(f); },
                        [](const Hypergeometric2F1& f) { return hypergeometric_coefficients(f); },
                        [](const AssociatedLegendre& f) { return associated_legendre_coefficients(f); },
                        [](const Jacobi& f) { return jacobi_coefficients(f); },
                    },
                    fam.variant());
}

Expected<Derivatives> eval_with_derivatives(const PolynomialFamily& fam, double x) {
  const Horner h = horner(coefficients(fam), x);
  const auto* leg = std::get_if<AssociatedLegendre>(&fam.variant());
  if (leg == nullptr || leg->m == 0) return Derivatives{h.value, h.first, h.second};

  // Q = s(x) p(x) with s = (1 - x^2)^(mu/2)
  const double mu = std::abs(leg->m);
  const double w = 1.0 - x * x;
  if (w <= 0.0) return make_error(ErrorCode::SingularPoint, "associated Legendre derivatives need |x| < 1");
  const double s = std::pow(w, 0.5 * mu);
  const double s1 = -mu * x * std::pow(w, 0.5 * mu - 1.0);
  const double s2 = -mu * std::pow(w, 0.5 * mu - 1.0) + mu * (mu - 2.0) * x * x * std::pow(w, 0.5 * mu - 2.0);
  return Derivatives{s * h.value, s1 * h.value + s * h.first, s2 * h.value + 2.0 * s1 * h.first + s * h.second};
}

Characteristic characteristic(const PolynomialFamily& fam, std::string_view var) {
  const Expr g = Expr::variable(std::string(var));
  const Expr one_minus_g = 1.0 - g;
  const Expr one_minus_g2 = 1.0 - g * g;
  return std::visit(
      overloaded{
          [&](const AssociatedLaguerre& f) {
            return Characteristic{(f.alpha + 1.0 - g) / g, static_cast<double>(f.n) / g};
          },
          [&](const Hypergeometric2F1& f) {
            const double a = -f.n;
            return Characteristic{(f.gamma - (a + f.beta + 1.0) * g) / (g * one_minus_g),
                                  -(a * f.beta) / (g * one_minus_g)};
          },
          [&](const AssociatedLegendre& f) {
            const double nn = f.n * (f.n + 1.0);
            const double m2 = static_cast<double>(f.m) * f.m;
            return Characteristic{-2.0 * g / one_minus_g2, (nn - m2 / one_minus_g2) / one_minus_g2};
          },
          [&](const Jacobi& f) {
            return Characteristic{(f.beta - f.alpha - (f.alpha + f.beta + 2.0) * g) / one_minus_g2,
                                  f.n * (f.n + f.alpha + f.beta + 1.0) / one_minus_g2};
          },
      },
      fam.variant());
}

Expr integral_of_M(const PolynomialFamily& fam, std::string_view var) {
  const Expr g = Expr::variable(std::string(var));
  return std::visit(overloaded{
                        [&](const AssociatedLaguerre& f) { return (f.alpha + 1.0) * expr::ln(g) - g; },
                        [&](const Hypergeometric2F1& f) {
                          const double k = -f.n + f.beta + 1.0 - f.gamma;
                          return f.gamma * expr::ln(g) + k * expr::ln(1.0 - g);
                        },
                        [&](const AssociatedLegendre&) { return expr::ln(1.0 - g * g); },
                        [&](const Jacobi& f) {
                          return (f.alpha + 1.0) * expr::ln(1.0 - g) + (f.beta + 1.0) * expr::ln(1.0 + g);
                        },
                    },
                    fam.variant());
}

Expr half_weight(const PolynomialFamily& fam, std::string_view var) {
  const Expr g = Expr::variable(std::string(var));
  return std::visit(overloaded{
                        [&](const AssociatedLaguerre& f) {
                          return expr::pow(g, 0.5 * (f.alpha + 1.0)) * expr::exp(-0.5 * g);
                        },
                        [&](const Hypergeometric2F1& f) {
                          const double k = -f.n + f.beta + 1.0 - f.gamma;
                          return expr::pow(g, 0.5 * f.gamma) * expr::pow(1.0 - g, 0.5 * k);
                        },
                        [&](const AssociatedLegendre&) { return expr::pow(1.0 - g * g, 0.5); },
                        [&](const Jacobi& f) {
                          return expr::pow(1.0 - g, 0.5 * (f.alpha + 1.0)) * expr::pow(1.0 + g, 0.5 * (f.beta + 1.0));
                        },
                    },
                    fam.variant());
}

Expr polynomial_expr(const PolynomialFamily& fam, std::string_view var) {
  const Expr g = Expr::variable(std::string(var));
  Expr p = poly_to_expr(coefficients(fam), g);
  if (const auto* leg = std::get_if<AssociatedLegendre>(&fam.variant()); leg != nullptr && leg->m != 0) {
    p = expr::pow(1.0 - g * g, 0.5 * std::abs(leg->m)) * p;
  }
  return p;
}

Interval natural_domain(const PolynomialFamily& fam) {
  switch (fam.kind()) {
    case FamilyKind::AssociatedLaguerre: return {0.0, HUGE_VAL};
    case FamilyKind::Hypergeometric2F1: return {0.0, 1.0};
    case FamilyKind::AssociatedLegendre:
    case FamilyKind::Jacobi: return {-1.0, 1.0};
  }
  return {0.0, 0.0};
}

Expected<double> ode_residual(const PolynomialFamily& fam, double x) {
  constexpr double kSingularTol = 1e-12;
  auto near = [&](double p) { return std::abs(x - p) < kSingularTol; };
  switch (fam.kind()) {
    case FamilyKind::AssociatedLaguerre:
      if (near(0.0)) return make_error(ErrorCode::SingularPoint, "x = 0 is singular for Laguerre");
      break;
    case FamilyKind::Hypergeometric2F1:
      if (near(0.0) || near(1.0)) return make_error(ErrorCode::SingularPoint, "x = 0, 1 are singular for 2F1");
      break;
    default:
      if (near(1.0) || near(-1.0)) return make_error(ErrorCode::SingularPoint, "x = +-1 are singular");
      break;
  }
  auto d = eval_with_derivatives(fam, x);
  if (!d) return d.error();
  const auto ch = characteristic(fam, "g");
  auto m = expr::eval(ch.M, "g", x);
  if (!m) return m.error();
  auto j = expr::eval(ch.J, "g", x);
  if (!j) return j.error();
  const double a = d->second, b = *m * d->first, c = *j * d->value;
  return std::abs(a + b + c) / std::max(1.0, std::abs(a) + std::abs(b) + std::abs(c));
}

}  // namespace solvagen::polys
