#include <benchmark/benchmark.h>

#include "edgecluster/descriptor.hpp"
#include "edgecluster/rng.hpp"

namespace {

using namespace edgecluster;

GrayImage noisy_image(int size, std::uint64_t seed) {
  Xoshiro256ss rng(seed);
  GrayImage image;
  image.width = size;
  image.height = size;
  image.maxval = 255;
  image.pixels.resize(static_cast<std::size_t>(size) * size);
  for (auto& p : image.pixels) p = static_cast<std::uint8_t>(rng.bounded(256));
  return image;
}

void BM_ExtractDescriptors(benchmark::State& state) {
  const GrayImage image = noisy_image(static_cast<int>(state.range(0)), 7);
  const ExtractorParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_descriptors(image, params, 0));
  }
}
BENCHMARK(BM_ExtractDescriptors)->Arg(96)->Arg(256)->Arg(512);

}  // namespace
