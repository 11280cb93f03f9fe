#include "gallery/records_json.hpp"

#include <fstream>

#include "gallery/error.hpp"

namespace gallery {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw LoadError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw LoadError(std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw LoadError(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t require_integer(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw LoadError(std::string("key '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

double require_number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw LoadError(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

ComponentClass require_class(const json& j) {
  const std::string name = require_string(j, "class");
  const auto cls = parse_component_class(name);
  if (!cls) throw LoadError("unknown component class '" + name + "'");
  return *cls;
}

json box_json(const BoundingBox& box) {
  return {{"x", box.x}, {"y", box.y}, {"w", box.w}, {"h", box.h}};
}

}  // namespace

BoundingBox box_from_json(const json& j) {
  BoundingBox box;
  box.x = static_cast<int>(require_integer(j, "x"));
  box.y = static_cast<int>(require_integer(j, "y"));
  box.w = static_cast<int>(require_integer(j, "w"));
  box.h = static_cast<int>(require_integer(j, "h"));
  if (box.w <= 0 || box.h <= 0) throw LoadError("non-positive box");
  if (box.x < 0 || box.y < 0) throw LoadError("negative box origin");
  return box;
}

json to_json(const AppRecord& app) {
  return {{"app_id", app.app_id},       {"name", app.name},
          {"category", app.category},   {"developer", app.developer},
          {"downloads", app.downloads}, {"rating", app.rating}};
}

AppRecord app_from_json(const json& j) {
  AppRecord app;
  app.app_id = require_string(j, "app_id");
  app.name = require_string(j, "name");
  app.category = require_string(j, "category");
  app.developer = require_string(j, "developer");
  app.downloads = require_integer(j, "downloads");
  app.rating = require_number(j, "rating");
  if (app.app_id.empty()) throw LoadError("empty app_id");
  if (app.downloads < 0) throw LoadError("negative downloads for app '" + app.app_id + "'");
  if (!(app.rating >= 0.0 && app.rating <= 5.0)) {
    throw LoadError("rating outside [0,5] for app '" + app.app_id + "'");
  }
  return app;
}

json to_json(const ColorProfile& profile) {
  json histogram = json::object();
  for (ColorName name : kAllColorNames) {
    if (profile.fraction(name) > 0.0) histogram[std::string(to_string(name))] = profile.fraction(name);
  }
  return {{"primary", to_string(profile.primary())}, {"histogram", histogram}};
}

ColorProfile color_profile_from_json(const json& j) {
  const json& histogram = require(j, "histogram");
  if (!histogram.is_object()) throw LoadError("color histogram must be an object");
  std::array<double, kColorNameCount> fractions{};
  for (const auto& [key, value] : histogram.items()) {
    const auto name = parse_color_name(key);
    if (!name) throw LoadError("unknown color name '" + key + "'");
    if (!value.is_number()) throw LoadError("color fraction must be a number");
    fractions[static_cast<std::size_t>(*name)] = value.get<double>();
  }
  ColorProfile profile = ColorProfile::from_fractions(fractions);
  if (to_string(profile.primary()) != require_string(j, "primary")) {
    throw LoadError("primary color disagrees with histogram");
  }
  return profile;
}

json to_json(const ScreenshotRecord& shot) {
  json j = {{"screenshot_id", shot.screenshot_id},
            {"app_id", shot.app_id},
            {"image", shot.image},
            {"width", shot.width},
            {"height", shot.height}};
  if (shot.components) {
    json components = json::array();
    for (const auto& a : *shot.components) {
      components.push_back({{"class", to_string(a.cls)},
                            {"x", a.box.x},
                            {"y", a.box.y},
                            {"w", a.box.w},
                            {"h", a.box.h}});
    }
    j["components"] = std::move(components);
  }
  return j;
}

json to_json(const ComponentRecord& c) {
  return {{"component_id", c.component_id},
          {"screenshot_id", c.screenshot_id},
          {"app_id", c.app_id},
          {"class", to_string(c.cls)},
          {"box", box_json(c.box)},
          {"color", to_json(c.color)},
          {"text", c.text},
          {"source", to_string(c.source)},
          {"confidence", c.confidence}};
}

ComponentRecord component_from_json(const json& j) {
  ComponentRecord c;
  c.component_id = require_string(j, "component_id");
  c.screenshot_id = require_string(j, "screenshot_id");
  c.app_id = require_string(j, "app_id");
  c.cls = require_class(j);
  c.box = box_from_json(require(j, "box"));
  c.color = color_profile_from_json(require(j, "color"));
  c.text = require_string(j, "text");
  const std::string source = require_string(j, "source");
  if (source == "metadata") {
    c.source = ComponentSource::kMetadata;
  } else if (source == "detector") {
    c.source = ComponentSource::kDetector;
  } else {
    throw LoadError("unknown component source '" + source + "'");
  }
  c.confidence = require_number(j, "confidence");
  if (!(c.confidence >= 0.0 && c.confidence <= 1.0)) throw LoadError("confidence outside [0,1]");
  if (c.source == ComponentSource::kMetadata && c.confidence != 1.0) {
    throw LoadError("metadata component must have confidence 1");
  }
  return c;
}

json detection_line(const std::string& screenshot_id, const Detection& d) {
  return {{"screenshot_id", screenshot_id},
          {"class", to_string(d.cls)},
          {"x", d.box.x},
          {"y", d.box.y},
          {"w", d.box.w},
          {"h", d.box.h},
          {"confidence", d.confidence}};
}

json truth_line(const std::string& screenshot_id, const Annotation& truth) {
  return {{"screenshot_id", screenshot_id},
          {"class", to_string(truth.cls)},
          {"x", truth.box.x},
          {"y", truth.box.y},
          {"w", truth.box.w},
          {"h", truth.box.h}};
}

void read_jsonl(const std::filesystem::path& path,
                const std::function<void(const json&, std::size_t)>& on_line) {
  std::ifstream in(path);
  if (!in) throw LoadError("missing file " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json parsed;
    try {
      parsed = json::parse(line);
    } catch (const json::parse_error&) {
      throw LoadError(path.filename().string() + ": malformed JSON at line " +
                      std::to_string(number));
    }
    try {
      on_line(parsed, number);
    } catch (const LoadError& e) {
      throw LoadError(path.filename().string() + ": " + e.what() + " at line " +
                      std::to_string(number));
    } catch (const json::exception& e) {
      throw LoadError(path.filename().string() + ": malformed record at line " +
                      std::to_string(number) + " (" + e.what() + ")");
    }
  }
}

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& lines) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& line : lines) out << line.dump() << '\n';
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

DetectionSet load_detections(const std::filesystem::path& path) {
  DetectionSet set;
  read_jsonl(path, [&](const json& j, std::size_t) {
    Detection d;
    d.cls = require_class(j);
    d.box = box_from_json(j);
    d.confidence = require_number(j, "confidence");
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) throw LoadError("confidence outside [0,1]");
    set[require_string(j, "screenshot_id")].push_back(d);
  });
  return set;
}

GroundTruthSet load_truths(const std::filesystem::path& path) {
  GroundTruthSet set;
  read_jsonl(path, [&](const json& j, std::size_t) {
    set[require_string(j, "screenshot_id")].push_back(Annotation{require_class(j), box_from_json(j)});
  });
  return set;
}

json to_json(const MetricsReport& report) {
  json per_class = json::object();
  for (const auto& [cls, m] : report.per_class) {
    per_class[std::string(to_string(cls))] = {{"precision", m.precision},
                                              {"recall", m.recall},
                                              {"ap", m.ap},
                                              {"tp", m.tp},
                                              {"fp", m.fp},
                                              {"fn", m.fn},
                                              {"num_truths", m.num_truths},
                                              {"num_predictions", m.num_predictions},
                                              {"zero_predictions", m.zero_predictions}};
  }
  return {{"iou_threshold", report.iou_threshold},
          {"precision", report.precision},
          {"recall", report.recall},
          {"mAP", report.map},
          {"map_classes", report.map_classes},
          {"zero_predictions", report.zero_predictions},
          {"per_class", per_class}};
}

}  // namespace gallery
