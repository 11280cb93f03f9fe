#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace gallery {

struct NotebookEntry {
  std::string entry_id;
  std::string component_id;
  std::string note;
  std::string created_at;  // UTC, ISO 8601

  friend bool operator==(const NotebookEntry&, const NotebookEntry&) = default;
};

// Design notebook backed by an append-only JSON-lines log. Each write is
// flushed and fsync'ed before returning; state is rebuilt by replaying the
// log on construction. A torn final line is ignored.
class Notebook {
 public:
  explicit Notebook(std::filesystem::path log_path);

  NotebookEntry add(const std::string& component_id, const std::string& note);
  // False if no live entry has this id.
  bool remove(const std::string& entry_id);

  // Newest first.
  std::vector<NotebookEntry> entries() const;

 private:
  void append(const std::string& line);

  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::vector<NotebookEntry> live_;  // oldest first
  std::uint64_t next_sequence_ = 1;
};

}  // namespace gallery
