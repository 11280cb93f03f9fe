#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "gallery/model.hpp"

namespace gallery {

struct AnnotatedCorpus {
  std::vector<AppRecord> apps;
  std::vector<ScreenshotRecord> screenshots;
  // Annotations dropped because their class is outside the gallery vocabulary.
  std::size_t dropped_annotations = 0;
};

struct IntroCorpus {
  std::vector<AppRecord> apps;
  std::vector<ScreenshotRecord> screenshots;
};

// Reads `apps.jsonl` and `screenshots.jsonl`. Screenshots without an id get
// "<app_id>-s<n>" (n counts per app in file order).
AnnotatedCorpus load_annotated_corpus(const std::filesystem::path& directory);

// Reads `apps.jsonl` and `intro.jsonl`; every referenced image must exist.
// Missing ids become "<app_id>-i<n>".
IntroCorpus load_intro_corpus(const std::filesystem::path& directory);

// Writes apps.jsonl, screenshots.jsonl and intro.jsonl. Image files are not
// copied; relative image paths are interpreted against `directory` on load.
void dump_corpus(std::span<const AppRecord> apps, std::span<const ScreenshotRecord> screenshots,
                 const std::filesystem::path& directory);

}  // namespace gallery
