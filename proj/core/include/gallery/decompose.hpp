#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "gallery/color.hpp"
#include "gallery/image.hpp"
#include "gallery/model.hpp"

namespace gallery {

struct Detection {
  ComponentClass cls = ComponentClass::kButton;
  BoundingBox box;
  double confidence = 1.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

// Component detector. Implementations must be safe for concurrent calls.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::vector<Detection> detect(const ScreenshotRecord& shot, const Image& image) const = 0;
};

// Text reader for one region of a screenshot.
class OcrEngine {
 public:
  virtual ~OcrEngine() = default;
  virtual std::string read(const ScreenshotRecord& shot, const Image& image,
                           const BoundingBox& region) const = 0;
};

class NullOcr final : public OcrEngine {
 public:
  std::string read(const ScreenshotRecord&, const Image&, const BoundingBox&) const override {
    return {};
  }
};

// One glyph run of a synthetic image, stored in "<image>.text.json" beside it.
struct TextRegion {
  BoundingBox box;
  std::string text;
};

std::filesystem::path text_sidecar_path(const std::filesystem::path& image_path);
void save_text_sidecar(const std::filesystem::path& image_path,
                       const std::vector<TextRegion>& regions);
std::vector<TextRegion> load_text_sidecar(const std::filesystem::path& image_path);

// OCR stand-in for synthetic images: returns the sidecar texts whose box
// centre lies in the region, joined by spaces in sidecar order. Screenshot
// image paths are resolved against `root`.
class SidecarOcr final : public OcrEngine {
 public:
  explicit SidecarOcr(std::filesystem::path root);

  std::string read(const ScreenshotRecord& shot, const Image& image,
                   const BoundingBox& region) const override;

 private:
  std::filesystem::path root_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::vector<TextRegion>> cache_;
};

// Maps one uniform-color rectangle to a class. The predicate sees the exact
// fill color and the rectangle.
struct DetectorRule {
  std::function<bool(Rgb, const BoundingBox&)> matches;
  ComponentClass cls = ComponentClass::kButton;
  double confidence = 1.0;
};

// Finds axis-aligned solid rectangles (4-connected runs of one exact color
// that fill their bounding box) on top of the most frequent color, and labels
// each with the first matching rule. Unmatched rectangles are ignored.
std::unique_ptr<Detector> stub_detector(std::vector<DetectorRule> rules);

// Replays an exported `detections.jsonl`, keyed by screenshot id.
class FileDetector final : public Detector {
 public:
  explicit FileDetector(std::map<std::string, std::vector<Detection>> by_screenshot);
  static FileDetector load(const std::filesystem::path& path);

  std::vector<Detection> detect(const ScreenshotRecord& shot, const Image& image) const override;

 private:
  std::map<std::string, std::vector<Detection>> by_screenshot_;
};

struct AugmentParams {
  double scale_lo = 0.5;
  double scale_hi = 0.9;
  int canvas_width = 1080;
  int canvas_height = 1920;
  std::uint64_t seed = 0;
  Rgb background{255, 255, 255};
};

struct AugmentResult {
  ScreenshotRecord screenshot;      // annotated, canvas-sized, boxes transformed
  std::vector<Annotation> truths;   // transformed ground truth
  Image canvas;
  double scale = 1.0;
  int offset_x = 0;
  int offset_y = 0;
};

// Box under the placement map: edges scaled with scale_nearest rounding,
// then shifted by the offset.
BoundingBox transform_box(const BoundingBox& box, double scale, int offset_x, int offset_y);

// Scales the screenshot by s ~ U[lo, hi'] and pastes it at a uniform random
// offset on a background canvas, where hi' is hi capped at the largest scale
// that still fits. Pure function of (image, annotations, params).
AugmentResult augment_screenshot(const ScreenshotRecord& shot, const Image& image,
                                 const AugmentParams& params);

struct DecomposeOptions {
  double min_confidence = 0.5;
  ColorThresholds color;
};

// One record per annotation, source=metadata, confidence 1. Component ids are
// "<screenshot_id>-c<n>".
std::vector<ComponentRecord> wirify_annotated(const ScreenshotRecord& shot, const Image& image,
                                              const OcrEngine& ocr,
                                              const ColorThresholds& color = {});

// Detections at or above min_confidence, source=detector. Component ids are
// "<screenshot_id>-d<n>" with n the detection's position in detector output.
std::vector<ComponentRecord> decompose_intro(const ScreenshotRecord& shot, const Image& image,
                                             const Detector& detector, const OcrEngine& ocr,
                                             const DecomposeOptions& options = {});

}  // namespace gallery
