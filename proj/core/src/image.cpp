#include "edgecluster/image.hpp"

#include <cctype>
#include <fstream>
#include <string>

#include "edgecluster/error.hpp"

namespace edgecluster {

namespace {

constexpr int kMaxDim = 65535;  // keeps patch origins inside u16

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool eof() const { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }
  std::uint8_t take() { return bytes_[pos_++]; }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  // Whitespace and '#'-to-end-of-line comments.
  void skip_separators() {
    while (!eof()) {
      const std::uint8_t c = peek();
      if (c == '#') {
        while (!eof() && take() != '\n') {
        }
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Unsigned decimal token; -1 when none is present.
  long read_uint(long limit) {
    skip_separators();
    if (eof() || !std::isdigit(peek())) return -1;
    long value = 0;
    while (!eof() && std::isdigit(peek())) {
      value = value * 10 + (take() - '0');
      if (value > limit) fail(Errc::HeaderOverflow, "numeric field out of range");
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    fail(Errc::BadMagic, "not a P2/P5 PGM file");
  }
  const bool binary = bytes[1] == '5';
  Cursor cur(bytes.subspan(2));

  const long width = cur.read_uint(kMaxDim);
  const long height = cur.read_uint(kMaxDim);
  const long maxval = cur.read_uint(255);
  if (width <= 0 || height <= 0) fail(Errc::HeaderOverflow, "image dimensions must be positive");
  if (maxval <= 0) fail(Errc::HeaderOverflow, "maxval must be in [1, 255]");

  GrayImage image;
  image.width = static_cast<int>(width);
  image.height = static_cast<int>(height);
  image.maxval = static_cast<int>(maxval);
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  image.pixels.reserve(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the payload.
    if (cur.eof() || !std::isspace(cur.peek())) {
      fail(Errc::TruncatedPayload, "missing payload separator");
    }
    cur.take();
    if (cur.remaining() < count) fail(Errc::TruncatedPayload, "binary payload shorter than width*height");
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t value = cur.take();
      if (value > maxval) fail(Errc::BadPixelValue, "pixel exceeds maxval");
      image.pixels.push_back(value);
    }
    if (!cur.eof()) fail(Errc::TrailingGarbage, "bytes after binary payload");
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long value = cur.read_uint(255);
      if (value < 0) fail(Errc::TruncatedPayload, "fewer pixel values than width*height");
      if (value > maxval) fail(Errc::BadPixelValue, "pixel exceeds maxval");
      image.pixels.push_back(static_cast<std::uint8_t>(value));
    }
    cur.skip_separators();
    if (!cur.eof()) fail(Errc::TrailingGarbage, "non-whitespace after ASCII payload");
  }
  return image;
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open image: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_pgm(bytes);
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  std::string header = "P5\n" + std::to_string(image.width) + ' ' +
                       std::to_string(image.height) + '\n' +
                       std::to_string(image.maxval) + '\n';
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), image.pixels.begin(), image.pixels.end());
  return bytes;
}

void save_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open image for writing: " + path.string());
  const auto bytes = encode_pgm(image);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out.good()) fail(Errc::IoError, "image write failed: " + path.string());
}

}  // namespace edgecluster
