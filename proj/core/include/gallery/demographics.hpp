#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gallery/index.hpp"

namespace gallery {

inline constexpr std::size_t kMaxSizePoints = 10'000;

struct SizePoint {
  int w = 0;
  int h = 0;

  friend bool operator==(const SizePoint&, const SizePoint&) = default;
};

// Distributions over a query's full match set. Maps hold non-zero entries only.
struct Demographics {
  std::map<ComponentClass, std::size_t> class_counts;
  std::map<ColorName, std::size_t> color_counts;
  // Unsampled up to kMaxSizePoints, else a fixed-seed uniform subsample.
  std::vector<SizePoint> size_points;
  std::size_t size_point_total = 0;  // exact count before subsampling
  std::map<std::string, std::size_t> category_counts;
};

// Offset and limit of q are ignored.
Demographics compute_demographics(const Index& index, const QuerySpec& q);

}  // namespace gallery
