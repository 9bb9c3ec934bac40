#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace edgecluster {

struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint8_t> pixels;  // row-major, one byte per pixel

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
};

// PGM, ASCII (P2) or binary (P5), maxval <= 255, '#' comments allowed.
// The binary variant must end exactly with the pixel payload.
GrayImage parse_pgm(std::span<const std::uint8_t> bytes);
GrayImage load_pgm(const std::filesystem::path& path);

// Binary (P5) writer; the generator and tests use it.
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);
void save_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace edgecluster
