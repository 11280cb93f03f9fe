#include "gallery/synth.hpp"

#include <array>
#include <random>

#include <nlohmann/json.hpp>

#include "gallery/error.hpp"
#include "gallery/records_json.hpp"

namespace gallery {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Two exact fills per class; all 22 are distinct and none is the background
// or the distractor grey.
constexpr std::array<std::array<Rgb, 2>, kComponentClassCount> kPalette = {{
    {{{229, 57, 53}, {30, 136, 229}}},    // button
    {{{251, 140, 0}, {94, 53, 177}}},     // image_button
    {{{67, 160, 71}, {216, 27, 96}}},     // check_box
    {{{0, 172, 193}, {253, 216, 53}}},    // radio_button
    {{{124, 179, 66}, {57, 73, 171}}},    // switch
    {{{0, 137, 123}, {142, 36, 170}}},    // toggle_button
    {{{200, 30, 30}, {3, 155, 229}}},     // progress_bar
    {{{255, 193, 7}, {33, 33, 33}}},      // rating_bar
    {{{244, 81, 30}, {96, 125, 139}}},    // seek_bar
    {{{117, 117, 117}, {0, 200, 83}}},    // spinner
    {{{255, 87, 34}, {41, 98, 255}}},     // chronometer
}};

struct SizeRange {
  int min_w, max_w, min_h, max_h;
  bool square;
};

constexpr std::array<SizeRange, kComponentClassCount> kSizes = {{
    {80, 200, 32, 56, false},   // button
    {40, 72, 40, 72, true},     // image_button
    {18, 28, 18, 28, true},     // check_box
    {18, 28, 18, 28, true},     // radio_button
    {36, 52, 18, 26, false},    // switch
    {60, 120, 30, 44, false},   // toggle_button
    {120, 300, 6, 12, false},   // progress_bar
    {90, 160, 18, 30, false},   // rating_bar
    {120, 300, 10, 20, false},  // seek_bar
    {100, 220, 32, 48, false},  // spinner
    {60, 120, 24, 40, false},   // chronometer
}};

constexpr std::array<std::string_view, 16> kLabels = {
    "Login", "LOG IN", "Sign up", "Submit", "Cancel", "OK", "Next", "Buy now",
    "Settings", "Share", "Download", "Play now", "Start", "Continue", "Save", "Log in now",
};

constexpr std::array<std::string_view, 7> kDevelopers = {
    "Acme Corp", "Globex", "Initech", "Umbrella Apps", "Hooli", "Stark Mobile", "Wayne Soft",
};

constexpr std::array<std::string_view, 8> kCategories = {
    "Finance", "Games", "Social", "Productivity", "Health", "Music", "Travel", "Education",
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}
  int between(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(int percent) { return between(1, 100) <= percent; }

 private:
  std::mt19937_64 rng_;
};

bool has_text(ComponentClass cls) {
  switch (cls) {
    case ComponentClass::kButton:
    case ComponentClass::kToggleButton:
    case ComponentClass::kSpinner:
    case ComponentClass::kChronometer:
      return true;
    default:
      return false;
  }
}

bool overlaps_with_gap(const BoundingBox& a, const BoundingBox& b, int gap) {
  return a.x < b.right() + gap && b.x < a.right() + gap && a.y < b.bottom() + gap &&
         b.y < a.bottom() + gap;
}

std::string app_key(std::size_t i) {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "app%02zu", i);
  return buffer;
}

json raw_annotation(std::string_view cls, const BoundingBox& b) {
  return {{"class", cls}, {"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

}  // namespace

Rgb synthetic_class_color(ComponentClass cls, int variant) {
  return kPalette[static_cast<std::size_t>(cls)][static_cast<std::size_t>(variant & 1)];
}

std::vector<DetectorRule> synthetic_detector_rules() {
  std::vector<DetectorRule> rules;
  for (std::size_t i = 0; i < kComponentClassCount; ++i) {
    const ComponentClass cls = kAllComponentClasses[i];
    const double confidence = 0.99 - 0.02 * static_cast<double>(i);
    for (int variant = 0; variant < 2; ++variant) {
      const Rgb fill = synthetic_class_color(cls, variant);
      rules.push_back({[fill](Rgb c, const BoundingBox&) { return c == fill; }, cls, confidence});
    }
  }
  return rules;
}

SyntheticScreen synthesize_screen(int width, int height, std::uint64_t seed,
                                  std::size_t min_components, std::size_t max_components) {
  if (width < 320 || height < 320) throw PreconditionError("synthetic screens need at least 320x320");
  if (min_components > max_components) throw PreconditionError("min_components > max_components");

  Random random(mix(seed));
  SyntheticScreen screen;
  screen.image = Image(width, height, kSyntheticScreenBackground);
  constexpr int kMargin = 8;
  constexpr int kGap = 4;
  std::vector<BoundingBox> occupied;

  auto place = [&](int w, int h) -> std::optional<BoundingBox> {
    for (int attempt = 0; attempt < 200; ++attempt) {
      const BoundingBox box{random.between(kMargin, width - kMargin - w),
                            random.between(kMargin, height - kMargin - h), w, h};
      bool clear = true;
      for (const auto& other : occupied) clear = clear && !overlaps_with_gap(box, other, kGap);
      if (clear) {
        occupied.push_back(box);
        return box;
      }
    }
    return std::nullopt;
  };

  const auto target = min_components + random.below(max_components - min_components + 1);
  while (screen.components.size() < target) {
    const ComponentClass cls = kAllComponentClasses[random.below(kComponentClassCount)];
    const SizeRange& size = kSizes[static_cast<std::size_t>(cls)];
    const int w = random.between(size.min_w, size.max_w);
    const int h = size.square ? w : random.between(size.min_h, size.max_h);
    const auto box = place(w, h);
    if (!box) break;
    screen.image.fill_rect(*box, synthetic_class_color(cls, random.between(0, 1)));
    screen.components.push_back({cls, *box});
    if (has_text(cls)) {
      std::string label(kLabels[random.below(kLabels.size())]);
      if (cls == ComponentClass::kChronometer) label = "00:" + std::to_string(10 + random.below(50));
      screen.texts.push_back({*box, std::move(label)});
    }
  }

  const int distractors = random.between(1, 2);
  for (int i = 0; i < distractors; ++i) {
    const auto box = place(random.between(80, 200), random.between(16, 24));
    if (!box) break;
    screen.image.fill_rect(*box, kSyntheticDistractorColor);
    screen.distractors.push_back(*box);
    screen.texts.push_back({*box, std::string(kLabels[random.below(kLabels.size())])});
  }
  return screen;
}

SynthSummary generate_synthetic_corpus(const fs::path& annotated_dir, const fs::path& intro_dir,
                                       const SynthOptions& options) {
  std::error_code ec;
  fs::create_directories(annotated_dir / "images", ec);
  fs::create_directories(intro_dir / "images", ec);
  if (ec) throw IoError("cannot create synthetic corpus directories: " + ec.message());

  Random random(mix(options.seed ^ 0xa995ULL));
  SynthSummary summary;
  std::vector<json> app_lines;
  std::vector<json> shot_lines;
  std::vector<json> intro_lines;
  std::vector<json> truth_lines;

  for (std::size_t a = 0; a < options.apps; ++a) {
    const std::string key = app_key(a);
    AppRecord app;
    app.app_id = "com.synth." + key;
    app.name = "Synth " + key;
    app.category = std::string(kCategories[random.below(kCategories.size())]);
    app.developer = std::string(kDevelopers[random.below(kDevelopers.size())]);
    std::int64_t downloads = 1;
    for (int p = random.between(3, 8); p > 0; --p) downloads *= 10;
    app.downloads = downloads * random.between(1, 9);
    app.rating = 1.0 + random.between(0, 40) / 10.0;
    app_lines.push_back(to_json(app));
    ++summary.apps;

    for (std::size_t s = 0; s < options.annotated_per_app; ++s) {
      const std::string id = key + "-s" + std::to_string(s);
      const SyntheticScreen screen = synthesize_screen(
          options.screen_width, options.screen_height, mix(options.seed) ^ mix(a * 1000 + s));
      const std::string image = "images/" + id + ".png";
      save_image(screen.image, annotated_dir / image);
      save_text_sidecar(annotated_dir / image, screen.texts);

      json components = json::array();
      for (const auto& c : screen.components) components.push_back(raw_annotation(to_string(c.cls), c.box));
      for (const auto& d : screen.distractors) components.push_back(raw_annotation("text_view", d));
      shot_lines.push_back({{"screenshot_id", id},
                            {"app_id", app.app_id},
                            {"image", image},
                            {"width", options.screen_width},
                            {"height", options.screen_height},
                            {"components", components}});
      ++summary.annotated_screenshots;
      summary.annotated_components += screen.components.size();
      summary.distractors += screen.distractors.size();
    }

    for (std::size_t s = 0; s < options.intro_per_app; ++s) {
      const std::string id = key + "-i" + std::to_string(s);
      const SyntheticScreen screen = synthesize_screen(
          options.screen_width, options.screen_height, mix(options.seed + 1) ^ mix(a * 1000 + s));
      ScreenshotRecord source{id, app.app_id, ScreenshotKind::kAnnotatedRuntime, "",
                              options.screen_width, options.screen_height, screen.components};
      AugmentParams params;
      params.canvas_width = options.poster_width;
      params.canvas_height = options.poster_height;
      params.seed = mix(options.seed + 2) ^ mix(a * 1000 + s);
      params.background = kSyntheticPosterBackground;
      const AugmentResult poster = augment_screenshot(source, screen.image, params);

      const std::string image = "images/" + id + ".png";
      save_image(poster.canvas, intro_dir / image);
      std::vector<TextRegion> texts;
      for (const auto& t : screen.texts) {
        const BoundingBox moved = transform_box(t.box, poster.scale, poster.offset_x, poster.offset_y);
        if (moved.w > 0 && moved.h > 0) texts.push_back({moved, t.text});
      }
      save_text_sidecar(intro_dir / image, texts);
      for (const auto& truth : poster.truths) truth_lines.push_back(truth_line(id, truth));

      intro_lines.push_back({{"screenshot_id", id},
                             {"app_id", app.app_id},
                             {"image", image},
                             {"width", options.poster_width},
                             {"height", options.poster_height}});
      ++summary.intro_screenshots;
      summary.intro_components += poster.truths.size();
    }
  }

  write_jsonl(annotated_dir / "apps.jsonl", app_lines);
  write_jsonl(annotated_dir / "screenshots.jsonl", shot_lines);
  write_jsonl(intro_dir / "apps.jsonl", app_lines);
  write_jsonl(intro_dir / "intro.jsonl", intro_lines);
  write_jsonl(intro_dir / "truths.jsonl", truth_lines);
  return summary;
}

}  // namespace gallery
