#include "edgecluster/points.hpp"

#include <cmath>

#include "edgecluster/error.hpp"

namespace edgecluster {

void VecArray::push_back(std::span<const double> v) {
  if (count_ == 0 && dim_ == 0) {
    dim_ = v.size();
  } else if (v.size() != dim_) {
    fail(Errc::DimensionMismatch, "row dimension mismatch on append");
  }
  data_.insert(data_.end(), v.begin(), v.end());
  ++count_;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

double max_row_displacement(const VecArray& a, const VecArray& b) noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double move = euclidean_distance(a[i], b[i]);
    if (move > worst) worst = move;
  }
  return worst;
}

}  // namespace edgecluster
