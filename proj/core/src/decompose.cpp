#include "gallery/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "gallery/error.hpp"
#include "gallery/records_json.hpp"
#include "gallery/text.hpp"

namespace gallery {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint32_t pack(const Rgb& c) {
  return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | std::uint32_t{c.b};
}

class RectangleDetector final : public Detector {
 public:
  explicit RectangleDetector(std::vector<DetectorRule> rules) : rules_(std::move(rules)) {}

  std::vector<Detection> detect(const ScreenshotRecord&, const Image& image) const override {
    std::vector<Detection> out;
    if (image.empty()) return out;

    std::unordered_map<std::uint32_t, std::size_t> histogram;
    for (const Rgb& p : image.pixels()) ++histogram[pack(p)];
    std::uint32_t background = 0;
    std::size_t best = 0;
    for (const auto& [color, count] : histogram) {
      if (count > best || (count == best && color < background)) {
        background = color;
        best = count;
      }
    }

    const int width = image.width();
    const int height = image.height();
    std::vector<bool> seen(image.pixels().size(), false);
    std::vector<std::pair<int, int>> stack;
    for (int y0 = 0; y0 < height; ++y0) {
      for (int x0 = 0; x0 < width; ++x0) {
        const std::size_t start = static_cast<std::size_t>(y0) * width + x0;
        if (seen[start]) continue;
        const Rgb color = image.at(x0, y0);
        if (pack(color) == background) {
          seen[start] = true;
          continue;
        }

        // Flood fill the 4-connected run of this exact color.
        int min_x = x0, max_x = x0, min_y = y0, max_y = y0;
        std::size_t count = 0;
        seen[start] = true;
        stack.assign(1, {x0, y0});
        while (!stack.empty()) {
          const auto [x, y] = stack.back();
          stack.pop_back();
          ++count;
          min_x = std::min(min_x, x);
          max_x = std::max(max_x, x);
          min_y = std::min(min_y, y);
          max_y = std::max(max_y, y);
          const std::pair<int, int> neighbours[] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
          for (const auto& [nx, ny] : neighbours) {
            if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
            const std::size_t k = static_cast<std::size_t>(ny) * width + nx;
            if (seen[k] || !(image.at(nx, ny) == color)) continue;
            seen[k] = true;
            stack.emplace_back(nx, ny);
          }
        }

        const BoundingBox box{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
        if (static_cast<std::int64_t>(count) != box.area()) continue;  // not solid
        for (const auto& rule : rules_) {
          if (rule.matches && rule.matches(color, box)) {
            out.push_back(Detection{rule.cls, box, rule.confidence});
            break;
          }
        }
      }
    }
    return out;
  }

 private:
  std::vector<DetectorRule> rules_;
};

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

fs::path text_sidecar_path(const fs::path& image_path) {
  fs::path p = image_path;
  p += ".text.json";
  return p;
}

void save_text_sidecar(const fs::path& image_path, const std::vector<TextRegion>& regions) {
  json j = json::array();
  for (const auto& r : regions) {
    j.push_back({{"x", r.box.x}, {"y", r.box.y}, {"w", r.box.w}, {"h", r.box.h}, {"text", r.text}});
  }
  std::ofstream out(text_sidecar_path(image_path));
  if (!out) throw IoError("cannot write text sidecar for " + image_path.string());
  out << j.dump() << '\n';
}

std::vector<TextRegion> load_text_sidecar(const fs::path& image_path) {
  const fs::path path = text_sidecar_path(image_path);
  std::ifstream in(path);
  if (!in) return {};
  std::vector<TextRegion> regions;
  try {
    const json j = json::parse(in);
    for (const json& r : j) regions.push_back({box_from_json(r), r.at("text").get<std::string>()});
  } catch (const json::exception& e) {
    throw LoadError("malformed text sidecar " + path.string() + ": " + e.what());
  }
  return regions;
}

SidecarOcr::SidecarOcr(fs::path root) : root_(std::move(root)) {}

std::string SidecarOcr::read(const ScreenshotRecord& shot, const Image&,
                             const BoundingBox& region) const {
  std::vector<TextRegion> regions;
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(shot.image);
    if (it == cache_.end()) it = cache_.emplace(shot.image, load_text_sidecar(root_ / shot.image)).first;
    regions = it->second;
  }
  std::string text;
  for (const auto& r : regions) {
    const double cx = r.box.x + r.box.w / 2.0;
    const double cy = r.box.y + r.box.h / 2.0;
    if (cx < region.x || cx >= region.right() || cy < region.y || cy >= region.bottom()) continue;
    if (!text.empty()) text.push_back(' ');
    text += r.text;
  }
  return text;
}

std::unique_ptr<Detector> stub_detector(std::vector<DetectorRule> rules) {
  return std::make_unique<RectangleDetector>(std::move(rules));
}

FileDetector::FileDetector(std::map<std::string, std::vector<Detection>> by_screenshot)
    : by_screenshot_(std::move(by_screenshot)) {}

FileDetector FileDetector::load(const fs::path& path) { return FileDetector(load_detections(path)); }

std::vector<Detection> FileDetector::detect(const ScreenshotRecord& shot, const Image&) const {
  const auto it = by_screenshot_.find(shot.screenshot_id);
  return it == by_screenshot_.end() ? std::vector<Detection>{} : it->second;
}

BoundingBox transform_box(const BoundingBox& box, double scale, int offset_x, int offset_y) {
  const int x0 = scaled_edge(box.x, scale);
  const int y0 = scaled_edge(box.y, scale);
  return {x0 + offset_x, y0 + offset_y, scaled_edge(box.right(), scale) - x0,
          scaled_edge(box.bottom(), scale) - y0};
}

AugmentResult augment_screenshot(const ScreenshotRecord& shot, const Image& image,
                                 const AugmentParams& params) {
  if (shot.kind != ScreenshotKind::kAnnotatedRuntime) {
    throw PreconditionError("augmentation needs an annotated runtime screenshot");
  }
  if (image.width() != shot.width || image.height() != shot.height) {
    throw PreconditionError("image size does not match screenshot '" + shot.screenshot_id + "'");
  }
  if (!(params.scale_lo > 0.0 && params.scale_lo <= params.scale_hi && params.scale_hi <= 1.0)) {
    throw PreconditionError("scale range must satisfy 0 < lo <= hi <= 1");
  }
  if (scaled_edge(image.width(), params.scale_lo) > params.canvas_width ||
      scaled_edge(image.height(), params.scale_lo) > params.canvas_height) {
    throw PreconditionError("canvas too small for screenshot '" + shot.screenshot_id + "'");
  }

  const double fit = std::min(static_cast<double>(params.canvas_width) / image.width(),
                              static_cast<double>(params.canvas_height) / image.height());
  const double hi = std::min(params.scale_hi, fit);

  std::mt19937_64 rng(params.seed);
  double scale = params.scale_lo + (std::max(hi, params.scale_lo) - params.scale_lo) * unit_uniform(rng);
  while (scale > params.scale_lo &&
         (scaled_edge(image.width(), scale) > params.canvas_width ||
          scaled_edge(image.height(), scale) > params.canvas_height)) {
    scale = std::nextafter(scale, 0.0);
  }

  const Image scaled = scale_nearest(image, scale);
  const auto slack_x = static_cast<std::uint64_t>(params.canvas_width - scaled.width());
  const auto slack_y = static_cast<std::uint64_t>(params.canvas_height - scaled.height());
  const int offset_x = static_cast<int>(rng() % (slack_x + 1));
  const int offset_y = static_cast<int>(rng() % (slack_y + 1));

  AugmentResult result;
  result.scale = scale;
  result.offset_x = offset_x;
  result.offset_y = offset_y;
  result.canvas = Image(params.canvas_width, params.canvas_height, params.background);
  blit(scaled, result.canvas, offset_x, offset_y);

  // Boxes that shrink below one pixel vanish from the canvas and are dropped.
  for (const auto& a : shot.components.value_or(std::vector<Annotation>{})) {
    const BoundingBox moved = transform_box(a.box, scale, offset_x, offset_y);
    if (moved.w > 0 && moved.h > 0) result.truths.push_back({a.cls, moved});
  }

  result.screenshot = shot;
  result.screenshot.screenshot_id = shot.screenshot_id + "-aug";
  result.screenshot.image.clear();
  result.screenshot.width = params.canvas_width;
  result.screenshot.height = params.canvas_height;
  result.screenshot.components = result.truths;
  return result;
}

std::vector<ComponentRecord> wirify_annotated(const ScreenshotRecord& shot, const Image& image,
                                              const OcrEngine& ocr, const ColorThresholds& color) {
  if (shot.kind != ScreenshotKind::kAnnotatedRuntime || !shot.components) {
    throw PreconditionError("screenshot '" + shot.screenshot_id + "' is not annotated");
  }
  if (image.width() != shot.width || image.height() != shot.height) {
    throw PreconditionError("image size does not match screenshot '" + shot.screenshot_id + "'");
  }
  std::vector<ComponentRecord> out;
  out.reserve(shot.components->size());
  for (std::size_t i = 0; i < shot.components->size(); ++i) {
    const Annotation& a = (*shot.components)[i];
    ComponentRecord c;
    c.component_id = shot.screenshot_id + "-c" + std::to_string(i);
    c.screenshot_id = shot.screenshot_id;
    c.app_id = shot.app_id;
    c.cls = a.cls;
    c.box = a.box;
    c.color = dominant_color(ImageView(image, a.box), color);
    c.text = normalize_text(ocr.read(shot, image, a.box));
    c.source = ComponentSource::kMetadata;
    c.confidence = 1.0;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ComponentRecord> decompose_intro(const ScreenshotRecord& shot, const Image& image,
                                             const Detector& detector, const OcrEngine& ocr,
                                             const DecomposeOptions& options) {
  if (shot.kind != ScreenshotKind::kAppIntroduction) {
    throw PreconditionError("screenshot '" + shot.screenshot_id + "' is not an introduction screenshot");
  }
  std::vector<Detection> detections;
  try {
    detections = detector.detect(shot, image);
  } catch (const std::exception& e) {
    throw Error("detector failed on screenshot '" + shot.screenshot_id + "': " + e.what());
  }

  std::vector<ComponentRecord> out;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const Detection& d = detections[i];
    if (!d.box.fits_within(image.width(), image.height())) {
      throw Error("out-of-bounds detection in screenshot '" + shot.screenshot_id + "'");
    }
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
      throw Error("detection confidence outside [0,1] in screenshot '" + shot.screenshot_id + "'");
    }
    if (d.confidence < options.min_confidence) continue;
    ComponentRecord c;
    c.component_id = shot.screenshot_id + "-d" + std::to_string(i);
    c.screenshot_id = shot.screenshot_id;
    c.app_id = shot.app_id;
    c.cls = d.cls;
    c.box = d.box;
    c.color = dominant_color(ImageView(image, d.box), options.color);
    c.text = normalize_text(ocr.read(shot, image, d.box));
    c.source = ComponentSource::kDetector;
    c.confidence = d.confidence;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace gallery
