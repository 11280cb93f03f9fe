#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "gallery/config.hpp"
#include "gallery/index.hpp"
#include "gallery/notebook.hpp"
#include "gallery/store.hpp"

namespace gallery {

struct HttpRequest {
  std::string method;  // "GET", "POST", "DELETE"
  std::string path;    // without query string
  std::multimap<std::string, std::string> params;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// JSON API over one store. Reads run against an immutable index snapshot;
// reload() swaps the snapshot atomically.
class GalleryService {
 public:
  explicit GalleryService(const std::filesystem::path& store_root);
  GalleryService(const std::filesystem::path& store_root, Config config);

  // Rebuilds the index from the store files.
  void reload();

  std::shared_ptr<const Index> index() const;
  const StoreLayout& store() const noexcept { return store_; }

  HttpResponse handle(const HttpRequest& request);

 private:
  struct Snapshot;

  std::shared_ptr<const Snapshot> snapshot() const;

  StoreLayout store_;
  Config config_;
  Notebook notebook_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
};

// Blocking HTTP/1.1 server: the JSON API plus static files under /images/.
// Polls components.jsonl and reloads when it changes.
class HttpServer {
 public:
  explicit HttpServer(GalleryService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // port 0 picks a free port; returns the bound port or -1.
  int bind(const std::string& host, int port);
  void listen_after_bind();  // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gallery
