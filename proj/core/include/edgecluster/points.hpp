#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edgecluster {

// Dense row-major array of equal-dimension vectors. Used both for the points
// being clustered and for centroid sets; the two roles share layout and all
// distance plumbing.
class VecArray {
 public:
  VecArray() = default;
  VecArray(std::size_t count, std::size_t dim)
      : count_(count), dim_(dim), data_(count * dim, 0.0) {}

  std::size_t size() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return count_ == 0; }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * dim_, dim_};
  }

  void push_back(std::span<const double> v);

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  friend bool operator==(const VecArray&, const VecArray&) = default;

 private:
  std::size_t count_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

using PointSet = VecArray;
using CentroidSet = VecArray;

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

// Max over rows of the Euclidean move between two equally-shaped arrays.
double max_row_displacement(const VecArray& a, const VecArray& b) noexcept;

}  // namespace edgecluster
