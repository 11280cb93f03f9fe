#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "gallery/config.hpp"
#include "gallery/decompose.hpp"
#include "gallery/model.hpp"

namespace gallery {

// Data directory served by the API:
//   apps.jsonl, screenshots.jsonl, intro.jsonl   corpus records
//   components.jsonl                             decomposed components
//   images/<screenshot file>                     screenshots (+ OCR sidecars)
//   images/thumbs/<component_id>.png             component crops
//   notebook.log                                 append-only notebook
//   gallery.conf                                 optional thresholds
class StoreLayout {
 public:
  explicit StoreLayout(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path apps() const { return root_ / "apps.jsonl"; }
  std::filesystem::path components() const { return root_ / "components.jsonl"; }
  std::filesystem::path images() const { return root_ / "images"; }
  std::filesystem::path thumbs() const { return images() / "thumbs"; }
  std::filesystem::path notebook_log() const { return root_ / "notebook.log"; }
  std::filesystem::path config() const { return root_ / "gallery.conf"; }

  // Store-relative path of a component thumbnail.
  static std::filesystem::path thumbnail_relpath(const std::string& component_id);

 private:
  std::filesystem::path root_;
};

struct StoreContents {
  std::vector<AppRecord> apps;
  std::vector<ScreenshotRecord> screenshots;
  std::vector<ComponentRecord> components;
};

StoreContents load_store(const StoreLayout& store);

// Config from gallery.conf when present, defaults otherwise.
Config load_store_config(const StoreLayout& store);

struct IngestSummary {
  std::size_t apps = 0;
  std::size_t annotated_screenshots = 0;
  std::size_t intro_screenshots = 0;
  std::size_t components = 0;
  std::size_t dropped_annotations = 0;
};

struct IngestOptions {
  Config config;
  // Intro screenshots are decomposed with this detector when set.
  const Detector* detector = nullptr;
};

// Loads both corpora, merges app records (an app_id present in both must
// agree), copies images and OCR sidecars into the store, wirifies annotated
// screenshots, decomposes intro screenshots, writes thumbnails. Replaces any
// previous corpus in the store; the notebook is kept.
IngestSummary ingest(const std::optional<std::filesystem::path>& annotated_dir,
                     const std::optional<std::filesystem::path>& intro_dir,
                     const StoreLayout& store, const IngestOptions& options);

// Re-runs intro decomposition over the store, replacing every detector-sourced
// component. Returns the number of detector components written.
std::size_t redecompose(const StoreLayout& store, const Detector& detector,
                        const DecomposeOptions& options);

void write_components(const StoreLayout& store, const std::vector<ComponentRecord>& components);

}  // namespace gallery
