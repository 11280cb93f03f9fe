#include "gallery/ingest.hpp"

#include <map>
#include <set>

#include "gallery/error.hpp"
#include "gallery/records_json.hpp"

namespace gallery {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<AppRecord> load_apps(const fs::path& directory) {
  std::vector<AppRecord> apps;
  std::set<std::string> seen;
  read_jsonl(directory / "apps.jsonl", [&](const json& j, std::size_t) {
    AppRecord app = app_from_json(j);
    if (!seen.insert(app.app_id).second) throw LoadError("duplicate app_id '" + app.app_id + "'");
    apps.push_back(std::move(app));
  });
  return apps;
}

// Common screenshot keys; the id is derived from the app when absent.
ScreenshotRecord parse_screenshot_header(const json& j, ScreenshotKind kind,
                                         std::map<std::string, std::size_t>& ordinals) {
  ScreenshotRecord shot;
  shot.kind = kind;
  shot.app_id = j.at("app_id").get<std::string>();
  shot.image = j.at("image").get<std::string>();
  shot.width = j.at("width").get<int>();
  shot.height = j.at("height").get<int>();
  if (shot.width <= 0 || shot.height <= 0) throw LoadError("non-positive screenshot size");
  const std::size_t ordinal = ordinals[shot.app_id]++;
  if (const auto it = j.find("screenshot_id"); it != j.end() && !it->is_null()) {
    shot.screenshot_id = it->get<std::string>();
  } else {
    const char tag = kind == ScreenshotKind::kAnnotatedRuntime ? 's' : 'i';
    shot.screenshot_id = shot.app_id + "-" + tag + std::to_string(ordinal);
  }
  if (shot.screenshot_id.empty()) throw LoadError("empty screenshot_id");
  return shot;
}

void require_consistent(const std::vector<AppRecord>& apps,
                        const std::vector<ScreenshotRecord>& screenshots) {
  const auto violations = validate_corpus(apps, screenshots);
  if (!violations.empty()) throw LoadError(violations.front().message);
}

}  // namespace

AnnotatedCorpus load_annotated_corpus(const fs::path& directory) {
  AnnotatedCorpus corpus;
  corpus.apps = load_apps(directory);
  std::map<std::string, std::size_t> ordinals;
  read_jsonl(directory / "screenshots.jsonl", [&](const json& j, std::size_t) {
    ScreenshotRecord shot = parse_screenshot_header(j, ScreenshotKind::kAnnotatedRuntime, ordinals);
    std::vector<Annotation> kept;
    if (const auto it = j.find("components"); it != j.end()) {
      if (!it->is_array()) throw LoadError("components must be an array");
      for (const json& c : *it) {
        const BoundingBox box = box_from_json(c);
        if (!box.fits_within(shot.width, shot.height)) {
          throw LoadError("box out of bounds in screenshot '" + shot.screenshot_id + "'");
        }
        const auto cls = parse_component_class(c.at("class").get<std::string>());
        if (!cls) {
          ++corpus.dropped_annotations;
          continue;
        }
        kept.push_back(Annotation{*cls, box});
      }
    }
    shot.components = std::move(kept);
    corpus.screenshots.push_back(std::move(shot));
  });
  require_consistent(corpus.apps, corpus.screenshots);
  return corpus;
}

IntroCorpus load_intro_corpus(const fs::path& directory) {
  IntroCorpus corpus;
  corpus.apps = load_apps(directory);
  std::map<std::string, std::size_t> ordinals;
  read_jsonl(directory / "intro.jsonl", [&](const json& j, std::size_t) {
    ScreenshotRecord shot = parse_screenshot_header(j, ScreenshotKind::kAppIntroduction, ordinals);
    const fs::path image = directory / shot.image;
    if (!fs::is_regular_file(image)) throw LoadError("missing image file " + image.string());
    corpus.screenshots.push_back(std::move(shot));
  });
  require_consistent(corpus.apps, corpus.screenshots);
  return corpus;
}

void dump_corpus(std::span<const AppRecord> apps, std::span<const ScreenshotRecord> screenshots,
                 const fs::path& directory) {
  const auto violations = validate_corpus(apps, screenshots);
  if (!violations.empty()) {
    throw PreconditionError("refusing to dump inconsistent corpus: " + violations.front().message);
  }
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IoError("cannot create " + directory.string() + ": " + ec.message());

  std::vector<json> app_lines;
  for (const auto& app : apps) app_lines.push_back(to_json(app));
  std::vector<json> annotated;
  std::vector<json> intro;
  for (const auto& shot : screenshots) {
    (shot.kind == ScreenshotKind::kAnnotatedRuntime ? annotated : intro).push_back(to_json(shot));
  }
  write_jsonl(directory / "apps.jsonl", app_lines);
  write_jsonl(directory / "screenshots.jsonl", annotated);
  write_jsonl(directory / "intro.jsonl", intro);
}

}  // namespace gallery
