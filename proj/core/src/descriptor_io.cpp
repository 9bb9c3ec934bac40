#include "edgecluster/descriptor_io.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>

#include "edgecluster/error.hpp"

namespace edgecluster {

namespace {

constexpr std::uint8_t kMagic[4] = {'E', 'D', 'F', 'D'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint16_t u16() {
    need(2);
    const std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) {
    if (pos_ + n > bytes_.size()) fail(Errc::TruncatedPayload, "descriptor file truncated");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
            static_cast<uInt>(bytes.size())));
}

}  // namespace

std::size_t descriptor_file_bytes(std::size_t count) {
  return 4 + 2 + 2 + 4 + count * (4 + 2 + 2 + kDescriptorDim * 4) + 4;
}

std::vector<std::uint8_t> encode_descriptors(std::span<const Descriptor> descriptors) {
  std::vector<std::uint8_t> out;
  out.reserve(descriptor_file_bytes(descriptors.size()));
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u16(out, kVersion);
  put_u16(out, static_cast<std::uint16_t>(kDescriptorDim));
  put_u32(out, static_cast<std::uint32_t>(descriptors.size()));
  for (const Descriptor& desc : descriptors) {
    put_u32(out, desc.image_id);
    put_u16(out, desc.row);
    put_u16(out, desc.col);
    for (const float v : desc.values) put_f32(out, v);
  }
  const std::uint32_t crc = crc_of({out.data() + 4, out.size() - 4});
  put_u32(out, crc);
  return out;
}

std::vector<Descriptor> decode_descriptors(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    fail(Errc::BadMagic, "not a descriptor file");
  }
  if (bytes.size() < 16) fail(Errc::TruncatedPayload, "descriptor file truncated");
  const std::uint32_t stored_crc =
      static_cast<std::uint32_t>(bytes[bytes.size() - 4]) |
      (static_cast<std::uint32_t>(bytes[bytes.size() - 3]) << 8) |
      (static_cast<std::uint32_t>(bytes[bytes.size() - 2]) << 16) |
      (static_cast<std::uint32_t>(bytes[bytes.size() - 1]) << 24);
  if (crc_of({bytes.data() + 4, bytes.size() - 8}) != stored_crc) {
    fail(Errc::ChecksumMismatch, "descriptor file checksum mismatch");
  }

  Reader reader(bytes.subspan(4, bytes.size() - 8));
  const std::uint16_t version = reader.u16();
  if (version != kVersion) fail(Errc::FormatVersionMismatch, "unsupported descriptor file version");
  const std::uint16_t dim = reader.u16();
  if (dim != kDescriptorDim) fail(Errc::FormatVersionMismatch, "unsupported descriptor dimension");
  const std::uint32_t count = reader.u32();
  if (descriptor_file_bytes(count) != bytes.size()) {
    fail(Errc::TruncatedPayload, "descriptor count does not match file size");
  }
  std::vector<Descriptor> descriptors(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Descriptor& desc = descriptors[i];
    desc.image_id = reader.u32();
    desc.row = reader.u16();
    desc.col = reader.u16();
    for (float& v : desc.values) v = reader.f32();
  }
  return descriptors;
}

void write_descriptors(const std::filesystem::path& path,
                       std::span<const Descriptor> descriptors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open descriptor file for writing: " + path.string());
  const auto bytes = encode_descriptors(descriptors);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out.good()) fail(Errc::IoError, "descriptor file write failed: " + path.string());
}

std::vector<Descriptor> read_descriptors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open descriptor file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_descriptors(bytes);
}

}  // namespace edgecluster
