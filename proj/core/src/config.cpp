#include "gallery/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gallery/error.hpp"
#include "gallery/text.hpp"

namespace gallery {
namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw LoadError("config: '" + key + "' expects a number");
  return out;
}

std::int64_t parse_integer(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size() || out < 0) {
    throw LoadError("config: '" + key + "' expects a non-negative integer");
  }
  return out;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config config;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"min_confidence", [&](auto& k, auto& v) { config.min_confidence = parse_double(k, v); }},
      {"color.black_v", [&](auto& k, auto& v) { config.color.black_v = parse_double(k, v); }},
      {"color.achromatic_s", [&](auto& k, auto& v) { config.color.achromatic_s = parse_double(k, v); }},
      {"color.white_v", [&](auto& k, auto& v) { config.color.white_v = parse_double(k, v); }},
      {"similarity.app", [&](auto& k, auto& v) { config.similarity.app = parse_double(k, v); }},
      {"similarity.developer", [&](auto& k, auto& v) { config.similarity.developer = parse_double(k, v); }},
      {"similarity.class", [&](auto& k, auto& v) { config.similarity.cls = parse_double(k, v); }},
      {"similarity.color", [&](auto& k, auto& v) { config.similarity.color = parse_double(k, v); }},
      {"similarity.text", [&](auto& k, auto& v) { config.similarity.text = parse_double(k, v); }},
      {"compare.min_apps",
       [&](auto& k, auto& v) { config.companies.min_apps = static_cast<std::size_t>(parse_integer(k, v)); }},
      {"compare.min_downloads", [&](auto& k, auto& v) { config.companies.min_downloads = parse_integer(k, v); }},
  };

  std::istringstream in{std::string(text)};
  std::string line;
  std::string section;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw LoadError("config: bad section header at line " + std::to_string(number));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw LoadError("config: expected key = value at line " + std::to_string(number));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!section.empty()) key = section + "." + key;
    const auto it = setters.find(key);
    if (it == setters.end()) throw LoadError("config: unknown key '" + key + "' at line " + std::to_string(number));
    it->second(key, value);
  }

  if (!(config.min_confidence >= 0.0 && config.min_confidence <= 1.0)) {
    throw LoadError("config: min_confidence must be in [0,1]");
  }
  try {
    config.similarity.validate();
  } catch (const PreconditionError& e) {
    throw LoadError(std::string("config: ") + e.what());
  }
  if (config.companies.min_apps == 0) throw LoadError("config: compare.min_apps must be positive");
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("missing config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace gallery
