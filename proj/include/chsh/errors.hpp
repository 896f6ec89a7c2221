#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chsh {

/// Which contract a rejected input violated.
enum class Invariant {
  parse,
  shape,
  dimension,
  domain,
  hermiticity,
  trace,
  psd,
  involution,
  finiteness,
};

std::string_view to_string(Invariant kind);

/// Shortest decimal form that reads back to the same double.
inline std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected because it breaks a documented invariant.
class ValidationError : public Error {
 public:
  ValidationError(Invariant kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  Invariant kind() const noexcept { return kind_; }

 private:
  Invariant kind_;
};

/// Internal consistency failure in a numerical routine.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace chsh
