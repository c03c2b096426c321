#include "psbm/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "psbm/errors.hpp"

namespace psbm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::InfeasibleExhaustive: return "InfeasibleExhaustive";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotInBall: return "NotInBall";
    case ErrorCode::EmptySubfamily: return "EmptySubfamily";
    case ErrorCode::InvalidExponents: return "InvalidExponents";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::WrongSpaceShape: return "WrongSpaceShape";
    case ErrorCode::TraceTooShort: return "TraceTooShort";
    case ErrorCode::NotAFixedPoint: return "NotAFixedPoint";
  }
  return "Error";
}

bool is_exact_integer(double x) noexcept {
  return std::isfinite(x) && std::abs(x) < kExactLimit && std::trunc(x) == x;
}

bool nearly_equal(double a, double b) noexcept {
  if (is_exact_integer(a) && is_exact_integer(b)) return a == b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kEqualityRelTol * scale;
}

bool less_or_equal(double a, double b) noexcept {
  if (is_exact_integer(a) && is_exact_integer(b)) return a <= b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return a <= b + kEqualityRelTol * scale;
}

double strict_threshold(double b) noexcept {
  return b - kStrictMargin * std::max(1.0, std::abs(b));
}

bool strictly_less(double a, double b) noexcept {
  if (is_exact_integer(a) && is_exact_integer(b)) return a < b;
  return a < strict_threshold(b);
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "?";
  return std::string(buf, end);
}

}  // namespace psbm
