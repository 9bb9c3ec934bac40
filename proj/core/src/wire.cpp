#include "edgecluster/wire.hpp"

#include <bit>
#include <cstring>

#include "edgecluster/error.hpp"

namespace edgecluster {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(std::span<const std::uint8_t> bytes, std::size_t at) {
  return static_cast<std::uint16_t>(bytes[at] | (bytes[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  return v;
}

std::vector<std::uint8_t> make_header(const char magic[4], std::size_t k, std::size_t d,
                                      int iteration) {
  if (k > 0xffff || d > 0xffff) fail(Errc::ConfigError, "k/d exceed wire format range");
  if (iteration < 0 || iteration > 0xffff) fail(Errc::ConfigError, "iteration exceeds wire format range");
  std::vector<std::uint8_t> out;
  out.insert(out.end(), magic, magic + 4);
  put_u16(out, kWireVersion);
  put_u16(out, static_cast<std::uint16_t>(k));
  put_u16(out, static_cast<std::uint16_t>(d));
  put_u16(out, static_cast<std::uint16_t>(iteration));
  put_u32(out, 0);  // reserved
  return out;
}

struct Header {
  std::size_t k = 0;
  std::size_t d = 0;
  int iteration = 0;
};

Header check_header(std::span<const std::uint8_t> bytes, const char magic[4]) {
  if (bytes.size() < kWireHeaderBytes || std::memcmp(bytes.data(), magic, 4) != 0) {
    fail(Errc::BadMagic, "wrong message magic");
  }
  if (get_u16(bytes, 4) != kWireVersion) {
    fail(Errc::FormatVersionMismatch, "unsupported wire version");
  }
  Header h;
  h.k = get_u16(bytes, 6);
  h.d = get_u16(bytes, 8);
  h.iteration = get_u16(bytes, 10);
  return h;
}

}  // namespace

std::size_t broadcast_bytes(std::size_t k, std::size_t d) {
  return kWireHeaderBytes + k * d * 4;
}

std::size_t partial_bytes(std::size_t k, std::size_t d) {
  return kWireHeaderBytes + k * (d * 4 + 4);
}

std::size_t converged_bytes() { return kWireHeaderBytes; }

std::vector<std::uint8_t> encode_broadcast(int iteration, const CentroidSet& centroids) {
  auto out = make_header("DKMB", centroids.size(), centroids.dim(), iteration);
  out.reserve(broadcast_bytes(centroids.size(), centroids.dim()));
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    for (const double v : centroids[j]) {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }
  return out;
}

DecodedBroadcast decode_broadcast(std::span<const std::uint8_t> bytes) {
  const Header h = check_header(bytes, "DKMB");
  if (bytes.size() != broadcast_bytes(h.k, h.d)) {
    fail(Errc::TruncatedPayload, "broadcast size does not match header");
  }
  DecodedBroadcast decoded;
  decoded.iteration = h.iteration;
  decoded.centroids = CentroidSet(h.k, h.d);
  std::size_t at = kWireHeaderBytes;
  for (std::size_t j = 0; j < h.k; ++j) {
    auto row = decoded.centroids.row(j);
    for (std::size_t c = 0; c < h.d; ++c, at += 4) {
      row[c] = static_cast<double>(std::bit_cast<float>(get_u32(bytes, at)));
    }
  }
  return decoded;
}

std::vector<std::uint8_t> encode_partial(const PartialSums& partial) {
  auto out = make_header("DKMP", partial.k, partial.d, partial.iteration);
  out.reserve(partial_bytes(partial.k, partial.d));
  for (std::size_t j = 0; j < partial.k; ++j) {
    for (std::size_t c = 0; c < partial.d; ++c) {
      const float v = static_cast<float>(partial.sums[j * partial.d + c]);
      put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
    if (partial.counts[j] > 0xffffffffULL) fail(Errc::ConfigError, "count exceeds u32");
    put_u32(out, static_cast<std::uint32_t>(partial.counts[j]));
  }
  return out;
}

PartialSums decode_partial(std::span<const std::uint8_t> bytes) {
  const Header h = check_header(bytes, "DKMP");
  if (bytes.size() != partial_bytes(h.k, h.d)) {
    fail(Errc::TruncatedPayload, "partial size does not match header");
  }
  PartialSums partial;
  partial.iteration = h.iteration;
  partial.k = h.k;
  partial.d = h.d;
  partial.sums.resize(h.k * h.d);
  partial.counts.resize(h.k);
  std::size_t at = kWireHeaderBytes;
  for (std::size_t j = 0; j < h.k; ++j) {
    for (std::size_t c = 0; c < h.d; ++c, at += 4) {
      partial.sums[j * h.d + c] = static_cast<double>(std::bit_cast<float>(get_u32(bytes, at)));
    }
    partial.counts[j] = get_u32(bytes, at);
    at += 4;
  }
  return partial;
}

std::vector<std::uint8_t> encode_converged(int iteration, std::size_t k, std::size_t d) {
  return make_header("DKMC", k, d, iteration);
}

bool is_converged_message(std::span<const std::uint8_t> bytes) {
  return bytes.size() == kWireHeaderBytes && std::memcmp(bytes.data(), "DKMC", 4) == 0;
}

}  // namespace edgecluster
