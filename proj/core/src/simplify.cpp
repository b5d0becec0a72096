// Best-effort simplification. Not canonicalizing: it folds constants, drops
// 0/1 identities, collects like terms, merges powers of equal bases and
// exponentials, and iterates to a fixed point. Every rewrite preserves value
// wherever the input is defined.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "solvagen/expr.hpp"

namespace solvagen::expr {
namespace {

constexpr int kMaxPasses = 32;

bool is_integer(double p) { return std::floor(p) == p && std::abs(p) < 1e15; }

Expr simplify_once(const Expr& e);

std::pair<double, Expr> split_coefficient(const Expr& t) {
  if (t.op() == Op::Mul && t.arg(0).is_constant()) {
    std::vector<Expr> rest(t.args().begin() + 1, t.args().end());
    return {t.arg(0).value(), Expr::mul(std::move(rest))};
  }
  return {1.0, t};
}

Expr scale(double c, const Expr& rest) {
  if (c == 1.0) return rest;
  std::vector<Expr> f{Expr::constant(c)};
  if (rest.op() == Op::Mul) {
    f.insert(f.end(), rest.args().begin(), rest.args().end());
  } else {
    f.push_back(rest);
  }
  return Expr::mul(std::move(f));
}

Expr fold_if_constant(const Expr& e) {
  auto v = eval(e, Bindings{});
  if (v && std::isfinite(*v)) return Expr::constant(*v);
  return e;
}

Expr simplify_add(const Expr& e) {
  std::vector<Expr> flat;
  for (const auto& a : e.args()) {
    Expr s = simplify_once(a);
    if (s.op() == Op::Add) {
      flat.insert(flat.end(), s.args().begin(), s.args().end());
    } else {
      flat.push_back(std::move(s));
    }
  }
  double constant = 0.0;
  std::vector<std::pair<Expr, double>> groups;
  for (const auto& t : flat) {
    if (t.is_constant()) {
      constant += t.value();
      continue;
    }
    auto [c, rest] = split_coefficient(t);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return tree_equal(g.first, rest); });
    if (it == groups.end()) {
      groups.emplace_back(rest, c);
    } else {
      it->second += c;
    }
  }
  // k - k f(u)^2 -> k h(u)^2 for the Pythagorean pairs. Besides being shorter
  // this keeps 1 - tanh^2 accurate where tanh has saturated towards 1.
  for (auto& [rest, c] : groups) {
    if (constant == 0.0 || c != -constant || rest.op() != Op::Pow || rest.exponent() != 2.0) continue;
    const Expr& f = rest.arg();
    std::optional<Op> partner;
    switch (f.op()) {
      case Op::Tanh: partner = Op::Sech; break;
      case Op::Sech: partner = Op::Tanh; break;
      case Op::Sin: partner = Op::Cos; break;
      case Op::Cos: partner = Op::Sin; break;
      default: break;
    }
    if (!partner) continue;
    rest = Expr::pow(Expr::apply(*partner, f.arg()), 2.0);
    c = constant;
    constant = 0.0;
    break;
  }
  std::vector<Expr> terms;
  for (const auto& [rest, c] : groups) {
    if (c != 0.0) terms.push_back(scale(c, rest));
  }
  std::sort(terms.begin(), terms.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (constant != 0.0) terms.insert(terms.begin(), Expr::constant(constant));
  return Expr::add(std::move(terms));
}

Expr simplify_pow(const Expr& base, double p) {
  if (p == 0.0) return Expr::constant(1.0);
  if (p == 1.0) return base;
  if (base.is_constant()) return fold_if_constant(Expr::pow(base, p));
  switch (base.op()) {
    case Op::Pow:
      // (x^q)^p = x^(pq) holds for integer p only; (x^2)^(1/2) is |x|.
      if (is_integer(p)) return Expr::pow(base.arg(), base.exponent() * p);
      break;
    case Op::Mul:
      if (is_integer(p)) {
        std::vector<Expr> f;
        for (const auto& a : base.args()) f.push_back(Expr::pow(a, p));
        return Expr::mul(std::move(f));
      }
      if (base.arg(0).is_constant() && base.arg(0).value() > 0.0) {
        std::vector<Expr> rest(base.args().begin() + 1, base.args().end());
        return Expr::mul({Expr::constant(std::pow(base.arg(0).value(), p)), Expr::pow(Expr::mul(std::move(rest)), p)});
      }
      break;
    case Op::Exp:
      return exp(scale(p, base.arg()));
    default:
      break;
  }
  return Expr::pow(base, p);
}

Expr simplify_mul(const Expr& e) {
  std::vector<Expr> flat;
  for (const auto& a : e.args()) {
    Expr s = simplify_once(a);
    if (s.op() == Op::Mul) {
      flat.insert(flat.end(), s.args().begin(), s.args().end());
    } else {
      flat.push_back(std::move(s));
    }
  }
  double coefficient = 1.0;
  std::vector<Expr> exponents_of_e;
  std::vector<std::pair<Expr, double>> powers;
  for (const auto& f : flat) {
    if (f.is_constant()) {
      coefficient *= f.value();
      continue;
    }
    if (f.op() == Op::Exp) {
      exponents_of_e.push_back(f.arg());
      continue;
    }
    Expr base = f;
    double p = 1.0;
    if (f.op() == Op::Pow) {
      base = f.arg();
      p = f.exponent();
    }
    auto it = std::find_if(powers.begin(), powers.end(), [&](const auto& g) { return tree_equal(g.first, base); });
    if (it == powers.end()) {
      powers.emplace_back(base, p);
    } else {
      it->second += p;
    }
  }
  if (coefficient == 0.0) return Expr::constant(0.0);

  std::vector<Expr> factors;
  for (const auto& [base, p] : powers) {
    if (p == 0.0) continue;
    factors.push_back(p == 1.0 ? base : Expr::pow(base, p));
  }
  if (exponents_of_e.size() == 1) {
    factors.push_back(exp(exponents_of_e.front()));
  } else if (exponents_of_e.size() > 1) {
    factors.push_back(exp(simplify_once(Expr::add(std::move(exponents_of_e)))));
  }

  if (factors.size() == 1 && factors.front().op() == Op::Add && coefficient != 1.0) {
    std::vector<Expr> terms;
    for (const auto& t : factors.front().args()) terms.push_back(Expr::mul({Expr::constant(coefficient), t}));
    return Expr::add(std::move(terms));
  }

  std::sort(factors.begin(), factors.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (coefficient != 1.0 || factors.empty()) factors.insert(factors.begin(), Expr::constant(coefficient));
  return Expr::mul(std::move(factors));
}

Expr simplify_once(const Expr& e) {
  switch (e.op()) {
    case Op::Constant:
    case Op::Variable:
      return e;
    case Op::Add:
      return simplify_add(e);
    case Op::Mul:
      return simplify_mul(e);
    case Op::Pow:
      return simplify_pow(simplify_once(e.arg()), e.exponent());
    default:
      break;
  }
  Expr a = simplify_once(e.arg());
  if (a.is_constant()) return fold_if_constant(Expr::apply(e.op(), a));
  if (e.op() == Op::Ln && a.op() == Op::Exp) return a.arg();
  return Expr::apply(e.op(), a);
}

}  // namespace

Expr simplify(const Expr& e) {
  Expr current = e;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    Expr next = simplify_once(current);
    if (tree_equal(next, current)) return next;
    current = std::move(next);
  }
  return current;
}

}  // namespace solvagen::expr
