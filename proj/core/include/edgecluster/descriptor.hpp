#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "edgecluster/image.hpp"
#include "edgecluster/points.hpp"

namespace edgecluster {

inline constexpr std::size_t kDescriptorDim = 128;  // 4x4 cells x 8 bins

// Unit-norm gradient-orientation histogram of one image patch.
struct Descriptor {
  std::array<float, kDescriptorDim> values{};
  std::uint32_t image_id = 0;
  std::uint16_t row = 0;  // patch origin, top-left
  std::uint16_t col = 0;

  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

struct ExtractorParams {
  int patch_size = 16;  // >= 4 and divisible by 4
  int stride = 16;      // >= 1
  // Minimum summed gradient magnitude per patch, after intensities are
  // normalized to [0, 1]; flat patches fall below it and are dropped.
  double energy_threshold = 1.0;
};

// Dense patch descriptors in raster order of the patch origins. Patches whose
// footprint exceeds the image are skipped; patches below the energy threshold
// (or with zero energy) are rejected. Each emitted descriptor is
// L2-normalized. Pure: identical inputs give identical output lists.
std::vector<Descriptor> extract_descriptors(const GrayImage& image,
                                            const ExtractorParams& params,
                                            std::uint32_t image_id = 0);

// Descriptors as rows of a double-precision point set.
PointSet descriptors_to_points(std::span<const Descriptor> descriptors);

}  // namespace edgecluster
