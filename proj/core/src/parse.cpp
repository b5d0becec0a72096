#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "solvagen/expr.hpp"

namespace solvagen::expr {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expected<Expr> run() {
    auto e = parse_expr();
    if (!e) return e;
    skip_space();
    if (pos_ != text_.size()) return syntax("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;

  Error syntax(const std::string& what) const {
    return make_error(ErrorCode::Syntax, what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expected<Expr> parse_expr() {
    auto lhs = parse_term();
    if (!lhs) return lhs;
    std::vector<Expr> terms{*lhs};
    while (true) {
      if (accept('+')) {
        auto rhs = parse_term();
        if (!rhs) return rhs;
        terms.push_back(*rhs);
      } else if (accept('-')) {
        auto rhs = parse_term();
        if (!rhs) return rhs;
        terms.push_back(-*rhs);
      } else {
        break;
      }
    }
    return Expr::add(std::move(terms));
  }

  Expected<Expr> parse_term() {
    auto lhs = parse_unary();
    if (!lhs) return lhs;
    std::vector<Expr> factors{*lhs};
    while (true) {
      if (accept('*')) {
        auto rhs = parse_unary();
        if (!rhs) return rhs;
        factors.push_back(*rhs);
      } else if (accept('/')) {
        auto rhs = parse_unary();
        if (!rhs) return rhs;
        factors.push_back(Expr::pow(*rhs, -1.0));
      } else {
        break;
      }
    }
    return Expr::mul(std::move(factors));
  }

  Expected<Expr> parse_unary() {
    if (accept('-')) {
      auto operand = parse_unary();
      if (!operand) return operand;
      return -*operand;
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expected<Expr> parse_power() {
    auto base = parse_primary();
    if (!base) return base;
    if (!accept('^')) return base;
    auto exponent = parse_unary();
    if (!exponent) return exponent;
    // Constant exponents become Pow nodes; anything else is exp(q*ln(base)).
    Expr folded = simplify(*exponent);
    if (folded.is_constant()) return Expr::pow(*base, folded.value());
    return exp(*exponent * ln(*base));
  }

  Expected<Expr> parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) return syntax("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      if (!inner) return inner;
      if (!accept(')')) return syntax("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    return syntax(std::string("unexpected character '") + c + "'");
  }

  Expected<Expr> parse_number() {
    const std::size_t start = pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) return syntax("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    if (!std::isfinite(value)) {
      pos_ = start;
      return syntax("number out of range");
    }
    return Expr::constant(value);
  }

  Expected<Expr> parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      auto arg = parse_expr();
      if (!arg) return arg;
      if (!accept(')')) return syntax("expected ')' after function argument");
      auto call = apply_function(name, *arg);
      if (!call) return make_error(ErrorCode::UnknownIdentifier, "unknown function '" + name + "' at offset " +
                                                                     std::to_string(start), start);
      return *call;
    }
    if (name == "pi") return Expr::constant(std::numbers::pi);
    if (name == "e") return Expr::constant(std::numbers::e);
    if (options_.allowed_variables) {
      const auto& allowed = *options_.allowed_variables;
      if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
        return make_error(ErrorCode::UnknownIdentifier,
                          "unknown identifier '" + name + "' at offset " + std::to_string(start), start);
      }
    }
    return Expr::variable(name);
  }

  static std::optional<Expr> apply_function(const std::string& name, const Expr& a) {
    if (name == "exp") return exp(a);
    if (name == "ln" || name == "log") return ln(a);
    if (name == "sin") return sin(a);
    if (name == "cos") return cos(a);
    if (name == "tan") return tan(a);
    if (name == "sec") return Expr::pow(cos(a), -1.0);
    if (name == "sinh") return sinh(a);
    if (name == "cosh") return cosh(a);
    if (name == "tanh") return tanh(a);
    if (name == "sech") return sech(a);
    if (name == "sqrt") return Expr::pow(a, 0.5);
    return std::nullopt;
  }
};

}  // namespace

Expected<Expr> parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).run(); }

}  // namespace solvagen::expr
