#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "edgecluster/descriptor.hpp"

namespace edgecluster {

// Binary descriptor file: magic "EDFD", u16 version (1), u16 dimension (128),
// u32 count, then per descriptor u32 image-id, u16 row, u16 col, 128 f32
// little-endian values; trailing CRC32 over everything after the magic.
std::vector<std::uint8_t> encode_descriptors(std::span<const Descriptor> descriptors);
std::vector<Descriptor> decode_descriptors(std::span<const std::uint8_t> bytes);

void write_descriptors(const std::filesystem::path& path,
                       std::span<const Descriptor> descriptors);
std::vector<Descriptor> read_descriptors(const std::filesystem::path& path);

// Exact encoded size; the placement profile and the simulator account with it.
std::size_t descriptor_file_bytes(std::size_t count);

}  // namespace edgecluster
