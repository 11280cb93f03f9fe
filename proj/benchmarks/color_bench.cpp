#include <random>

#include <benchmark/benchmark.h>

#include "gallery/color.hpp"
#include "gallery/image.hpp"

namespace {

using namespace gallery;

void BM_RgbToHsv(benchmark::State& state) {
  std::uint8_t c = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rgb_to_hsv(Rgb{c, static_cast<std::uint8_t>(c * 7), static_cast<std::uint8_t>(c * 13)}));
    ++c;
  }
}
BENCHMARK(BM_RgbToHsv);

void BM_DominantColor(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  Image image(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      image.at(x, y) = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                        static_cast<std::uint8_t>(rng())};
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(dominant_color(ImageView(image)));
  state.SetItemsProcessed(state.iterations() * side * side);
}
// 1024^2 exceeds the sampling limit.
BENCHMARK(BM_DominantColor)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
