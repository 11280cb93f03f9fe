#include "gallery/demographics.hpp"

#include <algorithm>
#include <random>

namespace gallery {
namespace {

constexpr std::uint64_t kSizeSampleSeed = 0xd3e0'9a5b'1c5e'0002ULL;

}  // namespace

Demographics compute_demographics(const Index& index, const QuerySpec& q) {
  const std::vector<std::size_t> positions = index.match(q);
  const auto components = index.components();

  Demographics d;
  d.size_point_total = positions.size();
  for (std::size_t pos : positions) {
    const ComponentRecord& c = components[pos];
    ++d.class_counts[c.cls];
    ++d.color_counts[c.color.primary()];
    ++d.category_counts[index.app_of(c).category];
  }

  if (positions.size() <= kMaxSizePoints) {
    d.size_points.reserve(positions.size());
    for (std::size_t pos : positions) d.size_points.push_back({components[pos].box.w, components[pos].box.h});
  } else {
    // Selection sampling (Knuth's algorithm S) keeps ranking order.
    std::mt19937_64 rng(kSizeSampleSeed);
    std::size_t needed = kMaxSizePoints;
    std::size_t left = positions.size();
    for (std::size_t pos : positions) {
      if (rng() % left < needed) {
        d.size_points.push_back({components[pos].box.w, components[pos].box.h});
        --needed;
      }
      --left;
    }
  }
  return d;
}

}  // namespace gallery
