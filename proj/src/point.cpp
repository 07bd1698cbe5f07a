#include "ccmeasure/point.hpp"

#include <algorithm>
#include <sstream>

#include "ccmeasure/errors.hpp"

namespace ccm {

Point::Point(std::size_t dim) : n_(dim) {
  if (dim > kMaxDim) {
    throw InputError("point dimension " + std::to_string(dim) + " exceeds the supported maximum of " +
                     std::to_string(kMaxDim));
  }
}

Point::Point(std::initializer_list<double> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point Point::from(std::span<const double> coords) {
  Point p(coords.size());
  std::copy(coords.begin(), coords.end(), p.c_.begin());
  return p;
}

bool Point::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n_),
                     [](double v) { return v == 0.0; });
}

bool Point::operator==(const Point& other) const noexcept {
  return n_ == other.n_ && std::equal(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n_), other.c_.begin());
}

std::string Point::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) os << ',';
    os << c_[i];
  }
  os << ')';
  return os.str();
}

}  // namespace ccm
