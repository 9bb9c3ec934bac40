#include "edgecluster/descriptor.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "edgecluster/error.hpp"

namespace edgecluster {

namespace {

void check_params(const ExtractorParams& params) {
  if (params.patch_size < 4 || params.patch_size % 4 != 0) {
    fail(Errc::ConfigError, "patch_size must be >= 4 and divisible by 4");
  }
  if (params.stride < 1) fail(Errc::ConfigError, "stride must be >= 1");
  if (params.energy_threshold < 0.0) {
    fail(Errc::ConfigError, "energy_threshold must be non-negative");
  }
}

std::optional<std::array<float, kDescriptorDim>> patch_histogram(
    const GrayImage& image, int row0, int col0, const ExtractorParams& params) {
  const int patch = params.patch_size;
  const double scale = 1.0 / image.maxval;

  // Intensities normalized to [0, 1]; gradients stay inside the patch, with
  // forward/backward differences on the patch border.
  std::vector<double> v(static_cast<std::size_t>(patch) * patch);
  for (int r = 0; r < patch; ++r) {
    for (int c = 0; c < patch; ++c) {
      v[static_cast<std::size_t>(r) * patch + c] = image.at(row0 + r, col0 + c) * scale;
    }
  }
  const auto at = [&](int r, int c) { return v[static_cast<std::size_t>(r) * patch + c]; };

  std::array<double, kDescriptorDim> hist{};
  double energy = 0.0;
  const int cell = patch / 4;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  constexpr double kBinWidth = std::numbers::pi / 4.0;  // 45 degrees

  for (int r = 0; r < patch; ++r) {
    for (int c = 0; c < patch; ++c) {
      const double gx = c == 0             ? at(r, 1) - at(r, 0)
                        : c == patch - 1   ? at(r, c) - at(r, c - 1)
                                           : (at(r, c + 1) - at(r, c - 1)) / 2.0;
      const double gy = r == 0             ? at(1, c) - at(0, c)
                        : r == patch - 1   ? at(r, c) - at(r - 1, c)
                                           : (at(r + 1, c) - at(r - 1, c)) / 2.0;
      const double magnitude = std::sqrt(gx * gx + gy * gy);
      if (magnitude == 0.0) continue;
      energy += magnitude;
      double angle = std::atan2(gy, gx);
      if (angle < 0.0) angle += kTwoPi;
      int bin = static_cast<int>(angle / kBinWidth);
      if (bin > 7) bin = 7;  // guards angle == 2*pi after rounding
      const int cell_index = (r / cell) * 4 + (c / cell);
      hist[static_cast<std::size_t>(cell_index) * 8 + bin] += magnitude;
    }
  }
  // Zero-energy patches are always rejected: a descriptor must normalize.
  if (energy < params.energy_threshold || energy == 0.0) return std::nullopt;

  double norm_sq = 0.0;
  for (const double h : hist) norm_sq += h * h;
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  std::array<float, kDescriptorDim> out{};
  for (std::size_t i = 0; i < kDescriptorDim; ++i) {
    out[i] = static_cast<float>(hist[i] * inv_norm);
  }
  return out;
}

}  // namespace

std::vector<Descriptor> extract_descriptors(const GrayImage& image,
                                            const ExtractorParams& params,
                                            std::uint32_t image_id) {
  check_params(params);
  if (image.width < params.patch_size || image.height < params.patch_size) {
    fail(Errc::ImageTooSmall, "no patch fits inside the image");
  }
  std::vector<Descriptor> descriptors;
  for (int row0 = 0; row0 + params.patch_size <= image.height; row0 += params.stride) {
    for (int col0 = 0; col0 + params.patch_size <= image.width; col0 += params.stride) {
      auto hist = patch_histogram(image, row0, col0, params);
      if (!hist) continue;
      Descriptor desc;
      desc.values = *hist;
      desc.image_id = image_id;
      desc.row = static_cast<std::uint16_t>(row0);
      desc.col = static_cast<std::uint16_t>(col0);
      descriptors.push_back(desc);
    }
  }
  return descriptors;
}

PointSet descriptors_to_points(std::span<const Descriptor> descriptors) {
  PointSet points(descriptors.size(), kDescriptorDim);
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    auto row = points.row(i);
    for (std::size_t c = 0; c < kDescriptorDim; ++c) {
      row[c] = static_cast<double>(descriptors[i].values[c]);
    }
  }
  return points;
}

}  // namespace edgecluster
