#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gallery/eval.hpp"
#include "gallery/model.hpp"

namespace gallery {

// Wire forms of the corpus records. Parsers throw LoadError with a message
// suitable for prefixing with file/line context.

nlohmann::json to_json(const AppRecord& app);
AppRecord app_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ColorProfile& profile);
ColorProfile color_profile_from_json(const nlohmann::json& j);

// `screenshots.jsonl` / `intro.jsonl` line; kind decides which keys are written.
nlohmann::json to_json(const ScreenshotRecord& shot);

nlohmann::json to_json(const ComponentRecord& component);
ComponentRecord component_from_json(const nlohmann::json& j);

// `detections.jsonl` / `truths.jsonl` lines.
nlohmann::json detection_line(const std::string& screenshot_id, const Detection& detection);
nlohmann::json truth_line(const std::string& screenshot_id, const Annotation& truth);

BoundingBox box_from_json(const nlohmann::json& j);

// Calls `on_line(json, line_number)` for each non-blank line. Missing file and
// JSON syntax errors become LoadError naming the file and line.
void read_jsonl(const std::filesystem::path& path,
                const std::function<void(const nlohmann::json&, std::size_t)>& on_line);

void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& lines);

DetectionSet load_detections(const std::filesystem::path& path);
GroundTruthSet load_truths(const std::filesystem::path& path);

nlohmann::json to_json(const MetricsReport& report);

}  // namespace gallery
