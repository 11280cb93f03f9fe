#include "gallery/notebook.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gallery/error.hpp"

namespace gallery {
namespace {

using nlohmann::json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buffer, static_cast<int>(millis));
  return out;
}

std::uint64_t sequence_of(const std::string& entry_id) {
  constexpr std::string_view kPrefix = "nb-";
  if (entry_id.rfind(kPrefix, 0) != 0) return 0;
  try {
    return std::stoull(entry_id.substr(kPrefix.size()));
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

Notebook::Notebook(std::filesystem::path log_path) : path_(std::move(log_path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) {
      // Torn write: drop the partial line so the next append starts clean.
      std::filesystem::resize_file(path_, pos);
      break;
    }
    const std::string line = content.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error&) {
      throw LoadError("corrupt notebook log " + path_.string());
    }
    const std::string op = record.value("op", "");
    if (op == "add") {
      NotebookEntry entry{record.at("entry_id").get<std::string>(),
                          record.at("component_id").get<std::string>(),
                          record.at("note").get<std::string>(),
                          record.at("created_at").get<std::string>()};
      next_sequence_ = std::max(next_sequence_, sequence_of(entry.entry_id) + 1);
      live_.push_back(std::move(entry));
    } else if (op == "delete") {
      const std::string id = record.at("entry_id").get<std::string>();
      std::erase_if(live_, [&](const NotebookEntry& e) { return e.entry_id == id; });
    } else {
      throw LoadError("unknown notebook operation '" + op + "'");
    }
  }
}

void Notebook::append(const std::string& line) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError("cannot open notebook log: " + std::string(std::strerror(errno)));
  const std::string payload = line + "\n";
  std::size_t written = 0;
  while (written < payload.size()) {
    const ssize_t n = ::write(fd, payload.data() + written, payload.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      throw IoError("cannot append to notebook log: " + std::string(std::strerror(errno)));
    }
    written += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

NotebookEntry Notebook::add(const std::string& component_id, const std::string& note) {
  std::lock_guard lock(mutex_);
  NotebookEntry entry{"nb-" + std::to_string(next_sequence_), component_id, note, utc_now()};
  append(json{{"op", "add"},
              {"entry_id", entry.entry_id},
              {"component_id", entry.component_id},
              {"note", entry.note},
              {"created_at", entry.created_at}}
             .dump());
  ++next_sequence_;
  live_.push_back(entry);
  return entry;
}

bool Notebook::remove(const std::string& entry_id) {
  std::lock_guard lock(mutex_);
  const auto it = std::find_if(live_.begin(), live_.end(),
                               [&](const NotebookEntry& e) { return e.entry_id == entry_id; });
  if (it == live_.end()) return false;
  append(json{{"op", "delete"}, {"entry_id", entry_id}}.dump());
  live_.erase(it);
  return true;
}

std::vector<NotebookEntry> Notebook::entries() const {
  std::lock_guard lock(mutex_);
  return {live_.rbegin(), live_.rend()};
}

}  // namespace gallery
