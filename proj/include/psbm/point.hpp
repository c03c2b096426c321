#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace psbm {

/// A carrier element: a real scalar for analytic carriers, or the index of a
/// label for tabulated ones. Equality is exact in both cases.
class Point {
 public:
  enum class Kind : std::uint8_t { Scalar, Label };

  constexpr Point() = default;

  static constexpr Point scalar(double value) { return Point(Kind::Scalar, value, 0); }
  static constexpr Point label(std::size_t index) { return Point(Kind::Label, 0.0, index); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_scalar() const { return kind_ == Kind::Scalar; }
  constexpr bool is_label() const { return kind_ == Kind::Label; }
  constexpr double value() const { return value_; }
  constexpr std::size_t index() const { return index_; }

  friend constexpr bool operator==(const Point& a, const Point& b) {
    if (a.kind_ != b.kind_) return false;
    return a.is_label() ? a.index_ == b.index_ : a.value_ == b.value_;
  }

  /// Total order: labels after scalars, then by index / value.
  friend constexpr bool operator<(const Point& a, const Point& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.is_label() ? a.index_ < b.index_ : a.value_ < b.value_;
  }

 private:
  constexpr Point(Kind kind, double value, std::size_t index)
      : kind_(kind), value_(value), index_(index) {}

  Kind kind_ = Kind::Scalar;
  double value_ = 0.0;
  std::size_t index_ = 0;
};

}  // namespace psbm
