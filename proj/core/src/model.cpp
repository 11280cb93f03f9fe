#include "gallery/model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gallery/text.hpp"

namespace gallery {
namespace {

constexpr std::array<std::string_view, kComponentClassCount> kClassNames = {
    "button",      "image_button", "check_box", "radio_button", "switch",     "toggle_button",
    "progress_bar", "rating_bar",  "seek_bar",  "spinner",      "chronometer",
};

std::string describe(const BoundingBox& b) {
  return "(" + std::to_string(b.x) + "," + std::to_string(b.y) + "," + std::to_string(b.w) + "," +
         std::to_string(b.h) + ")";
}

}  // namespace

std::string_view to_string(ComponentClass cls) {
  return kClassNames[static_cast<std::size_t>(cls)];
}

std::optional<ComponentClass> parse_component_class(std::string_view text) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i) {
    if (kClassNames[i] == text) return kAllComponentClasses[i];
  }
  return std::nullopt;
}

std::string_view to_string(ScreenshotKind kind) {
  return kind == ScreenshotKind::kAnnotatedRuntime ? "annotated_runtime" : "app_introduction";
}

std::string_view to_string(ComponentSource source) {
  return source == ComponentSource::kMetadata ? "metadata" : "detector";
}

std::vector<Violation> validate_corpus(std::span<const AppRecord> apps,
                                       std::span<const ScreenshotRecord> screenshots) {
  std::set<Violation> found;
  auto report = [&](std::string message) { found.insert(Violation{std::move(message)}); };

  std::map<std::string_view, std::size_t> app_ids;
  for (const auto& app : apps) {
    if (++app_ids[app.app_id] == 2) report("duplicate app_id '" + app.app_id + "'");
    if (app.app_id.empty()) report("app with empty app_id");
    if (app.downloads < 0) report("app '" + app.app_id + "' has negative downloads");
    if (!(app.rating >= 0.0 && app.rating <= 5.0)) {
      report("app '" + app.app_id + "' has rating outside [0,5]");
    }
  }

  std::map<std::string_view, std::size_t> shot_ids;
  for (const auto& shot : screenshots) {
    const std::string& id = shot.screenshot_id;
    if (++shot_ids[id] == 2) report("duplicate screenshot_id '" + id + "'");
    if (!app_ids.contains(shot.app_id)) {
      report("screenshot '" + id + "' references unknown app_id '" + shot.app_id + "'");
    }
    if (shot.width <= 0 || shot.height <= 0) {
      report("screenshot '" + id + "' has non-positive dimensions");
    }
    const bool annotated = shot.kind == ScreenshotKind::kAnnotatedRuntime;
    if (annotated && !shot.components) {
      report("annotated screenshot '" + id + "' lacks component metadata");
    }
    if (!annotated && shot.components) {
      report("introduction screenshot '" + id + "' carries component metadata");
    }
    if (!shot.components) continue;
    for (const auto& annotation : *shot.components) {
      if (!annotation.box.fits_within(shot.width, shot.height)) {
        report("screenshot '" + id + "' box " + describe(annotation.box) +
               " outside image bounds");
      }
    }
  }
  return {found.begin(), found.end()};
}

std::string company_key(std::string_view developer) { return fold_case(trim(developer)); }

}  // namespace gallery
