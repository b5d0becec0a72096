#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace solvagen {

enum class ErrorCode {
  Syntax,
  UnknownIdentifier,
  UnboundVariable,
  Domain,
  InvalidParameter,
  Constraint,
  SingularPoint,
  NoBoundState,
  NoConvergence,
  FallToCenter,
  Io,
};

const char* to_string(ErrorCode code);

struct Error {
  ErrorCode code;
  std::string message;
  // Byte offset into the parsed text; only meaningful for Syntax errors.
  std::size_t offset = 0;

  std::string describe() const { return std::string(to_string(code)) + ": " + message; }
};

inline Error make_error(ErrorCode code, std::string message, std::size_t offset = 0) {
  return Error{code, std::move(message), offset};
}

class BadExpectedAccess : public std::logic_error {
 public:
  explicit BadExpectedAccess(const Error& e)
      : std::logic_error("accessed value of failed result (" + e.describe() + ")") {}
};

// Minimal value-or-error carrier (std::expected is C++23).
template <typename T>
class Expected {
 public:
  Expected(T value) : state_(std::in_place_index<0>, std::move(value)) {}
  Expected(Error error) : state_(std::in_place_index<1>, std::move(error)) {}

  bool has_value() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  const T& value() const& {
    if (!has_value()) throw BadExpectedAccess(error());
    return std::get<0>(state_);
  }
  T& value() & {
    if (!has_value()) throw BadExpectedAccess(error());
    return std::get<0>(state_);
  }
  T&& value() && {
    if (!has_value()) throw BadExpectedAccess(error());
    return std::get<0>(std::move(state_));
  }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

  const Error& error() const& { return std::get<1>(state_); }

  template <typename U>
  T value_or(U&& fallback) const& {
    return has_value() ? std::get<0>(state_) : static_cast<T>(std::forward<U>(fallback));
  }

 private:
  std::variant<T, Error> state_;
};

// Propagate the error of an Expected out of the enclosing function.
#define SOLVAGEN_TRY(var, expr)                  \
  auto var##_result_ = (expr);                   \
  if (!var##_result_) return var##_result_.error(); \
  auto var = std::move(var##_result_).value()

}  // namespace solvagen
