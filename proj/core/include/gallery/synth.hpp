#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "gallery/decompose.hpp"
#include "gallery/image.hpp"
#include "gallery/model.hpp"

namespace gallery {

// Synthetic GUI screens: solid rectangles in class-specific exact colors on a
// white background, plus grey "text view" distractors outside the vocabulary.

Rgb synthetic_class_color(ComponentClass cls, int variant);  // variant in {0, 1}
inline constexpr Rgb kSyntheticDistractorColor{238, 238, 238};
inline constexpr Rgb kSyntheticScreenBackground{255, 255, 255};
inline constexpr Rgb kSyntheticPosterBackground{236, 239, 241};

// Rules recognising exactly the synthetic palette.
std::vector<DetectorRule> synthetic_detector_rules();

struct SyntheticScreen {
  Image image;
  std::vector<Annotation> components;
  std::vector<BoundingBox> distractors;
  std::vector<TextRegion> texts;
};

SyntheticScreen synthesize_screen(int width, int height, std::uint64_t seed,
                                  std::size_t min_components = 4, std::size_t max_components = 9);

struct SynthOptions {
  std::size_t apps = 24;
  std::size_t annotated_per_app = 3;
  std::size_t intro_per_app = 2;
  int screen_width = 360;
  int screen_height = 640;
  int poster_width = 540;
  int poster_height = 960;
  std::uint64_t seed = 7;
};

struct SynthSummary {
  std::size_t apps = 0;
  std::size_t annotated_screenshots = 0;
  std::size_t intro_screenshots = 0;
  std::size_t annotated_components = 0;  // in-vocabulary only
  std::size_t distractors = 0;
  std::size_t intro_components = 0;
};

// Writes an annotated corpus (apps.jsonl, screenshots.jsonl, images) and an
// intro corpus (apps.jsonl, intro.jsonl, images, truths.jsonl with the
// planted boxes) for the same apps.
SynthSummary generate_synthetic_corpus(const std::filesystem::path& annotated_dir,
                                       const std::filesystem::path& intro_dir,
                                       const SynthOptions& options = {});

}  // namespace gallery
