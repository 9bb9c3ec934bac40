#pragma once

#include <stdexcept>
#include <string>

namespace edgecluster {

// Every recoverable failure in the library throws Error with one of these
// codes. The CLI maps them to exit status 2; code() keeps them testable.
enum class Errc {
  // image parsing
  BadMagic,
  HeaderOverflow,
  TruncatedPayload,
  TrailingGarbage,
  BadPixelValue,
  ImageTooSmall,
  // descriptor files
  FormatVersionMismatch,
  ChecksumMismatch,
  // clustering
  DimensionMismatch,
  TooFewCentroids,
  NotEnoughDistinctPoints,
  LengthMismatch,
  InvalidLabel,
  // distributed simulation
  IterationMismatch,
  PartitionError,
  // pipeline
  TooFewImages,
  SeedFileMissing,
  NoDescriptors,
  ManifestError,
  // placement / misc
  EmptySweep,
  ConfigError,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace edgecluster
