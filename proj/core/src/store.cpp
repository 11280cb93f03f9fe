#include "gallery/store.hpp"

#include <cctype>
#include <map>
#include <set>

#include "gallery/error.hpp"
#include "gallery/image.hpp"
#include "gallery/ingest.hpp"
#include "gallery/records_json.hpp"

namespace gallery {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Injective file-name escaping: unreserved URL characters pass, everything
// else (including '~') becomes "~XX".
std::string escape_file_name(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('~');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  if (out == "." || out == "..") out = "~2E" + out.substr(1);
  return out;
}

void copy_file_into(const fs::path& from, const fs::path& to) {
  std::error_code ec;
  fs::copy_file(from, to, fs::copy_options::overwrite_existing, ec);
  if (ec) throw IoError("cannot copy " + from.string() + " to " + to.string() + ": " + ec.message());
}

void write_thumbnails(const StoreLayout& store, const Image& image,
                      const std::vector<ComponentRecord>& components) {
  for (const auto& c : components) {
    save_image(crop(image, c.box), store.root() / StoreLayout::thumbnail_relpath(c.component_id));
  }
}

std::vector<AppRecord> merge_apps(const std::vector<AppRecord>& first,
                                  const std::vector<AppRecord>& second) {
  std::vector<AppRecord> merged = first;
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < merged.size(); ++i) by_id.emplace(merged[i].app_id, i);
  for (const auto& app : second) {
    const auto it = by_id.find(app.app_id);
    if (it == by_id.end()) {
      by_id.emplace(app.app_id, merged.size());
      merged.push_back(app);
    } else if (!(merged[it->second] == app)) {
      throw LoadError("conflicting records for app '" + app.app_id + "'");
    }
  }
  return merged;
}

}  // namespace

fs::path StoreLayout::thumbnail_relpath(const std::string& component_id) {
  return fs::path("images") / "thumbs" / (escape_file_name(component_id) + ".png");
}

Config load_store_config(const StoreLayout& store) {
  return fs::exists(store.config()) ? Config::load(store.config()) : Config{};
}

StoreContents load_store(const StoreLayout& store) {
  StoreContents contents;
  AnnotatedCorpus annotated = load_annotated_corpus(store.root());
  IntroCorpus intro = load_intro_corpus(store.root());
  contents.apps = std::move(annotated.apps);
  contents.screenshots = std::move(annotated.screenshots);
  for (auto& shot : intro.screenshots) contents.screenshots.push_back(std::move(shot));
  if (fs::exists(store.components())) {
    read_jsonl(store.components(), [&](const json& j, std::size_t) {
      contents.components.push_back(component_from_json(j));
    });
  }
  return contents;
}

void write_components(const StoreLayout& store, const std::vector<ComponentRecord>& components) {
  std::vector<json> lines;
  lines.reserve(components.size());
  for (const auto& c : components) lines.push_back(to_json(c));
  // Readers poll this file, so replace it in one rename.
  const fs::path staging = store.components().string() + ".tmp";
  write_jsonl(staging, lines);
  std::error_code ec;
  fs::rename(staging, store.components(), ec);
  if (ec) throw IoError("cannot replace " + store.components().string() + ": " + ec.message());
}

IngestSummary ingest(const std::optional<fs::path>& annotated_dir,
                     const std::optional<fs::path>& intro_dir, const StoreLayout& store,
                     const IngestOptions& options) {
  if (!annotated_dir && !intro_dir) throw PreconditionError("nothing to ingest");

  IngestSummary summary;
  std::vector<AppRecord> apps;
  std::vector<std::pair<ScreenshotRecord, fs::path>> shots;  // record, source directory
  if (annotated_dir) {
    AnnotatedCorpus corpus = load_annotated_corpus(*annotated_dir);
    summary.dropped_annotations = corpus.dropped_annotations;
    summary.annotated_screenshots = corpus.screenshots.size();
    apps = merge_apps(apps, corpus.apps);
    for (auto& s : corpus.screenshots) shots.emplace_back(std::move(s), *annotated_dir);
  }
  if (intro_dir) {
    IntroCorpus corpus = load_intro_corpus(*intro_dir);
    summary.intro_screenshots = corpus.screenshots.size();
    apps = merge_apps(apps, corpus.apps);
    for (auto& s : corpus.screenshots) shots.emplace_back(std::move(s), *intro_dir);
  }
  summary.apps = apps.size();

  std::error_code ec;
  fs::remove_all(store.thumbs(), ec);
  fs::create_directories(store.thumbs(), ec);
  if (ec) throw IoError("cannot create store at " + store.root().string() + ": " + ec.message());

  std::vector<ScreenshotRecord> records;
  std::set<std::string> file_names;
  for (auto& [shot, source_dir] : shots) {
    const fs::path source = source_dir / shot.image;
    std::string name = escape_file_name(shot.screenshot_id) + fs::path(shot.image).extension().string();
    if (!file_names.insert(name).second) throw LoadError("duplicate screenshot_id '" + shot.screenshot_id + "'");
    const fs::path relative = fs::path("images") / name;
    copy_file_into(source, store.root() / relative);
    if (fs::exists(text_sidecar_path(source))) {
      copy_file_into(text_sidecar_path(source), text_sidecar_path(store.root() / relative));
    }
    shot.image = relative.generic_string();
    records.push_back(shot);
  }
  dump_corpus(apps, records, store.root());

  const SidecarOcr ocr(store.root());
  DecomposeOptions decompose_options{options.config.min_confidence, options.config.color};
  std::vector<ComponentRecord> components;
  for (const auto& shot : records) {
    const bool annotated = shot.kind == ScreenshotKind::kAnnotatedRuntime;
    if (!annotated && !options.detector) continue;
    const Image image = load_image(store.root() / shot.image);
    if (image.width() != shot.width || image.height() != shot.height) {
      throw LoadError("image size of screenshot '" + shot.screenshot_id + "' disagrees with its record");
    }
    auto found = annotated ? wirify_annotated(shot, image, ocr, options.config.color)
                           : decompose_intro(shot, image, *options.detector, ocr, decompose_options);
    write_thumbnails(store, image, found);
    for (auto& c : found) components.push_back(std::move(c));
  }
  summary.components = components.size();
  write_components(store, components);
  return summary;
}

std::size_t redecompose(const StoreLayout& store, const Detector& detector,
                        const DecomposeOptions& options) {
  StoreContents contents = load_store(store);
  std::vector<ComponentRecord> components;
  for (auto& c : contents.components) {
    if (c.source == ComponentSource::kMetadata) {
      components.push_back(std::move(c));
    } else {
      std::error_code ec;
      fs::remove(store.root() / StoreLayout::thumbnail_relpath(c.component_id), ec);
    }
  }

  const SidecarOcr ocr(store.root());
  std::size_t detected = 0;
  for (const auto& shot : contents.screenshots) {
    if (shot.kind != ScreenshotKind::kAppIntroduction) continue;
    const Image image = load_image(store.root() / shot.image);
    auto found = decompose_intro(shot, image, detector, ocr, options);
    write_thumbnails(store, image, found);
    detected += found.size();
    for (auto& c : found) components.push_back(std::move(c));
  }
  write_components(store, components);
  return detected;
}

}  // namespace gallery
