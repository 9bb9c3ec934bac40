#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgecluster/points.hpp"

namespace edgecluster {

// Per-cluster vector sums and member counts computed by one device over its
// local shard; the payload a worker reports back to the master.
struct PartialSums {
  int sender = 0;
  int iteration = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::vector<double> sums;           // k * d, row-major
  std::vector<std::uint64_t> counts;  // k
};

// Simulated wire formats, byte-accounted exactly. All messages share a
// 16-byte header: 4-byte magic, u16 version, u16 k, u16 d, u16 iteration,
// u32 reserved; little-endian throughout. Values travel as f32; the
// simulator itself keeps double precision and uses these encodings for byte
// accounting and external interchange.
inline constexpr std::size_t kWireHeaderBytes = 16;
inline constexpr std::uint16_t kWireVersion = 1;

std::size_t broadcast_bytes(std::size_t k, std::size_t d);
std::size_t partial_bytes(std::size_t k, std::size_t d);
std::size_t converged_bytes();

std::vector<std::uint8_t> encode_broadcast(int iteration, const CentroidSet& centroids);
struct DecodedBroadcast {
  int iteration = 0;
  CentroidSet centroids;
};
DecodedBroadcast decode_broadcast(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_partial(const PartialSums& partial);
PartialSums decode_partial(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_converged(int iteration, std::size_t k, std::size_t d);
bool is_converged_message(std::span<const std::uint8_t> bytes);

}  // namespace edgecluster
