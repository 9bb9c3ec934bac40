#include <doctest.h>

#include <string>

#include "edgecluster/error.hpp"
#include "edgecluster/image.hpp"

using namespace edgecluster;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& text) {
  return {text.begin(), text.end()};
}

}  // namespace

TEST_CASE("ASCII P2 parses exactly") {
  const GrayImage image = parse_pgm(bytes_of("P2\n2 2\n255\n0 128\n255 64\n"));
  CHECK(image.width == 2);
  CHECK(image.height == 2);
  CHECK(image.maxval == 255);
  CHECK(image.pixels == std::vector<std::uint8_t>{0, 128, 255, 64});
}

TEST_CASE("header comments are skipped") {
  const GrayImage image =
      parse_pgm(bytes_of("P2\n# shot on a phone\n2 1 # dims\n15\n3 15\n"));
  CHECK(image.width == 2);
  CHECK(image.maxval == 15);
  CHECK(image.pixels == std::vector<std::uint8_t>{3, 15});
}

TEST_CASE("unsupported magic is rejected") {
  CHECK_THROWS_WITH_AS(parse_pgm(bytes_of("P7\n2 2\n255\n....")), doctest::Contains("P2/P5"),
                       Error);
  try {
    parse_pgm(bytes_of("P7\n"));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadMagic);
  }
}

TEST_CASE("binary P5 round-trips through the writer") {
  GrayImage image;
  image.width = 3;
  image.height = 2;
  image.maxval = 200;
  image.pixels = {0, 10, 20, 30, 199, 200};
  const auto encoded = encode_pgm(image);
  const GrayImage back = parse_pgm(encoded);
  CHECK(back.width == image.width);
  CHECK(back.height == image.height);
  CHECK(back.maxval == image.maxval);
  CHECK(back.pixels == image.pixels);
}

TEST_CASE("binary payload shorter than width*height is truncated") {
  std::vector<std::uint8_t> data = bytes_of("P5 2 2 255\n");
  data.push_back(1);
  data.push_back(2);
  data.push_back(3);
  try {
    parse_pgm(data);
    FAIL("expected TruncatedPayload");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TruncatedPayload);
  }
}

TEST_CASE("binary trailing garbage is rejected") {
  std::vector<std::uint8_t> data = bytes_of("P5 2 1 255\n");
  data.insert(data.end(), {9, 9, 42});
  try {
    parse_pgm(data);
    FAIL("expected TrailingGarbage");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TrailingGarbage);
  }
}

TEST_CASE("header values out of range") {
  try {
    parse_pgm(bytes_of("P2\n2 2\n300\n0 0 0 0\n"));
    FAIL("expected HeaderOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HeaderOverflow);
  }
  try {
    parse_pgm(bytes_of("P2\n0 2\n255\n"));
    FAIL("expected HeaderOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HeaderOverflow);
  }
}

TEST_CASE("pixels above maxval are rejected") {
  try {
    parse_pgm(bytes_of("P2\n2 1\n100\n5 101\n"));
    FAIL("expected BadPixelValue");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadPixelValue);
  }
}

TEST_CASE("ASCII payload truncation") {
  try {
    parse_pgm(bytes_of("P2\n2 2\n255\n0 1 2\n"));
    FAIL("expected TruncatedPayload");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TruncatedPayload);
  }
}
