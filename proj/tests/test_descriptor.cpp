#include <doctest.h>

#include <cmath>

#include "edgecluster/descriptor.hpp"
#include "edgecluster/error.hpp"
#include "edgecluster/rng.hpp"
#include "oracles.hpp"

using namespace edgecluster;

namespace {

GrayImage constant_image(int size, std::uint8_t value) {
  GrayImage image;
  image.width = size;
  image.height = size;
  image.maxval = 255;
  image.pixels.assign(static_cast<std::size_t>(size) * size, value);
  return image;
}

GrayImage checkerboard(int size, int square) {
  GrayImage image = constant_image(size, 0);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      if (((r / square) + (c / square)) % 2 == 0) {
        image.pixels[static_cast<std::size_t>(r) * size + c] = 255;
      }
    }
  }
  return image;
}

double norm_of(const Descriptor& desc) {
  double total = 0.0;
  for (const float v : desc.values) total += static_cast<double>(v) * v;
  return std::sqrt(total);
}

}  // namespace

TEST_CASE("constant image yields no descriptors") {
  const auto descs = extract_descriptors(constant_image(64, 128), {});
  CHECK(descs.empty());
}

TEST_CASE("half-dark half-bright 16x16 yields one horizontal-gradient descriptor") {
  GrayImage image = constant_image(16, 0);
  for (int r = 0; r < 16; ++r) {
    for (int c = 8; c < 16; ++c) image.pixels[static_cast<std::size_t>(r) * 16 + c] = 255;
  }
  const auto descs = extract_descriptors(image, {});
  REQUIRE(descs.size() == 1);
  CHECK(norm_of(descs[0]) == doctest::Approx(1.0).epsilon(1e-6));
  // The step sits between columns 7 and 8: cell columns 1 and 2. Gradients
  // point in +x, orientation bin 0 (horizontal-direction bins are 0 and 4).
  for (int cell = 0; cell < 16; ++cell) {
    const int cell_col = cell % 4;
    for (int bin = 0; bin < 8; ++bin) {
      const float v = descs[0].values[static_cast<std::size_t>(cell) * 8 + bin];
      if (cell_col == 1 || cell_col == 2) {
        if (bin == 0) {
          CHECK(v > 0.0f);
        } else {
          CHECK(v == 0.0f);
        }
      } else {
        CHECK(v == 0.0f);
      }
    }
  }
  CHECK(descs[0].row == 0);
  CHECK(descs[0].col == 0);
}

TEST_CASE("checkerboard matches the independent reference implementation") {
  const GrayImage image = checkerboard(32, 8);
  const ExtractorParams params;
  const auto descs = extract_descriptors(image, params, 7);
  const auto reference = oracles::reference_extract(image, params);
  REQUIRE(descs.size() == reference.size());
  for (std::size_t i = 0; i < descs.size(); ++i) {
    for (std::size_t c = 0; c < kDescriptorDim; ++c) {
      CHECK(std::abs(static_cast<double>(descs[i].values[c]) - reference[i][c]) < 1e-6);
    }
    CHECK(descs[i].image_id == 7);
  }
}

TEST_CASE("noisy image agrees with the reference value-for-value") {
  Xoshiro256ss rng(3);
  GrayImage image = constant_image(48, 0);
  for (auto& p : image.pixels) p = static_cast<std::uint8_t>(rng.bounded(256));
  ExtractorParams params;
  params.stride = 8;
  const auto descs = extract_descriptors(image, params);
  const auto reference = oracles::reference_extract(image, params);
  REQUIRE(descs.size() == reference.size());
  REQUIRE(!descs.empty());
  for (std::size_t i = 0; i < descs.size(); ++i) {
    for (std::size_t c = 0; c < kDescriptorDim; ++c) {
      CHECK(std::abs(static_cast<double>(descs[i].values[c]) - reference[i][c]) < 1e-6);
    }
  }
}

TEST_CASE("every emitted descriptor is unit norm and the count is bounded") {
  const GrayImage image = checkerboard(70, 5);
  ExtractorParams params;
  params.stride = 6;
  const auto descs = extract_descriptors(image, params);
  const auto cols = (image.width - params.patch_size) / params.stride + 1;
  const auto rows = (image.height - params.patch_size) / params.stride + 1;
  CHECK(descs.size() <= static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows));
  for (const Descriptor& desc : descs) {
    CHECK(norm_of(desc) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("extraction is pure and offset-invariant") {
  const GrayImage image = checkerboard(32, 8);
  const auto a = extract_descriptors(image, {});
  const auto b = extract_descriptors(image, {});
  CHECK(a == b);

  // Adding a constant offset leaves gradients, and so descriptors, unchanged.
  GrayImage shifted = image;
  for (auto& p : shifted.pixels) p = static_cast<std::uint8_t>(p / 2 + 64);
  GrayImage base = image;
  for (auto& p : base.pixels) p = static_cast<std::uint8_t>(p / 2);
  const auto da = extract_descriptors(base, {});
  const auto db = extract_descriptors(shifted, {});
  REQUIRE(da.size() == db.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    for (std::size_t c = 0; c < kDescriptorDim; ++c) {
      CHECK(std::abs(da[i].values[c] - db[i].values[c]) < 1e-6f);
    }
  }
}

TEST_CASE("image smaller than a patch is rejected") {
  try {
    extract_descriptors(constant_image(8, 0), {});
    FAIL("expected ImageTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ImageTooSmall);
  }
}

TEST_CASE("invalid extractor params are rejected") {
  ExtractorParams bad;
  bad.patch_size = 10;  // not divisible by 4
  CHECK_THROWS_AS(extract_descriptors(constant_image(32, 0), bad), Error);
}
