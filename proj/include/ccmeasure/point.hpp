#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace ccm {

// Coordinates of a point in one of the supported spaces. Storage is inline
// (no allocation) since distance evaluation sits in the innermost loops.
class Point {
 public:
  static constexpr std::size_t kMaxDim = 8;

  Point() = default;
  explicit Point(std::size_t dim);
  Point(std::initializer_list<double> coords);
  static Point from(std::span<const double> coords);
  static Point zero(std::size_t dim) { return Point(dim); }

  std::size_t dim() const noexcept { return n_; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), n_}; }

  bool is_zero() const noexcept;
  bool operator==(const Point& other) const noexcept;

  std::string to_string() const;

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t n_ = 0;
};

}  // namespace ccm
