#pragma once

#include <filesystem>
#include <string_view>

#include "gallery/color.hpp"
#include "gallery/comparison.hpp"
#include "gallery/index.hpp"

namespace gallery {

// Tunable thresholds. Files are key = value lines, '#' comments, and optional
// [section] headers that prefix the following keys ("[similarity]" then
// "app = 0.3" sets similarity.app).
struct Config {
  double min_confidence = 0.5;
  ColorThresholds color;
  SimilarityWeights similarity;
  CompanyThresholds companies;

  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);
};

}  // namespace gallery
