#include "gallery/service.hpp"

#include <charconv>
#include <chrono>
#include <condition_variable>
#include <iostream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "gallery/comparison.hpp"
#include "gallery/demographics.hpp"
#include "gallery/error.hpp"
#include "gallery/records_json.hpp"

namespace gallery {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HttpResponse respond(int status, const json& body) {
  return HttpResponse{status, "application/json", body.dump()};
}

HttpResponse error_response(int status, const std::string& message) {
  return respond(status, json{{"error", message}});
}

std::optional<std::string> param(const HttpRequest& request, const std::string& name) {
  const auto it = request.params.find(name);
  if (it == request.params.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

template <typename Int>
std::optional<Int> integer_param(const HttpRequest& request, const std::string& name) {
  const auto raw = param(request, name);
  if (!raw) return std::nullopt;
  Int value{};
  const auto [end, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
  if (ec != std::errc() || end != raw->data() + raw->size() || value < 0) {
    throw BadRequest("malformed parameter '" + name + "'");
  }
  return value;
}

QuerySpec parse_facets(const HttpRequest& request) {
  QuerySpec q;
  if (const auto cls = param(request, "class")) {
    q.cls = parse_component_class(*cls);
    if (!q.cls) throw BadRequest("malformed parameter 'class'");
  }
  if (const auto color = param(request, "color")) {
    q.color = parse_color_name(*color);
    if (!q.color) throw BadRequest("malformed parameter 'color'");
  }
  q.category = param(request, "category");
  q.developer = param(request, "developer");
  q.text = param(request, "text");
  q.min_w = integer_param<int>(request, "min_w");
  q.max_w = integer_param<int>(request, "max_w");
  q.min_h = integer_param<int>(request, "min_h");
  q.max_h = integer_param<int>(request, "max_h");
  return q;
}

std::string uri_of(const fs::path& store_relative) { return "/" + store_relative.generic_string(); }

json box_json(const BoundingBox& b) { return {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}}; }

json summary_json(const Index& index, const ComponentRecord& c) {
  const AppRecord& app = index.app_of(c);
  return {{"component_id", c.component_id},
          {"class", to_string(c.cls)},
          {"box", box_json(c.box)},
          {"color", to_string(c.color.primary())},
          {"text", c.text},
          {"thumbnail", uri_of(StoreLayout::thumbnail_relpath(c.component_id))},
          {"app_id", app.app_id},
          {"app_name", app.name},
          {"source", to_string(c.source)},
          {"confidence", c.confidence}};
}

std::vector<std::string> split_companies(const std::string& raw) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    const std::size_t comma = raw.find(',', pos);
    const std::size_t end = comma == std::string::npos ? raw.size() : comma;
    if (end > pos) out.push_back(raw.substr(pos, end - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

struct GalleryService::Snapshot {
  std::shared_ptr<const Index> index;
  std::map<std::string, ScreenshotRecord> screenshots;
};

GalleryService::GalleryService(const fs::path& store_root)
    : GalleryService(store_root, load_store_config(StoreLayout(store_root))) {}

GalleryService::GalleryService(const fs::path& store_root, Config config)
    : store_(store_root), config_(std::move(config)), notebook_(store_.notebook_log()) {
  reload();
}

void GalleryService::reload() {
  StoreContents contents = load_store(store_);
  auto next = std::make_shared<Snapshot>();
  for (auto& shot : contents.screenshots) {
    const std::string id = shot.screenshot_id;
    next->screenshots.emplace(id, std::move(shot));
  }
  for (const auto& c : contents.components) {
    if (!next->screenshots.contains(c.screenshot_id)) {
      throw LoadError("component '" + c.component_id + "' references unknown screenshot");
    }
  }
  next->index = Index::build(std::move(contents.components), std::move(contents.apps));
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(next);
}

std::shared_ptr<const GalleryService::Snapshot> GalleryService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::shared_ptr<const Index> GalleryService::index() const { return snapshot()->index; }

HttpResponse GalleryService::handle(const HttpRequest& request) {
  const auto snap = snapshot();
  const Index& index = *snap->index;
  const std::string& path = request.path;

  try {
    if (path == "/search") {
      if (request.method != "GET") return error_response(405, "method not allowed");
      QuerySpec q = parse_facets(request);
      q.offset = integer_param<std::size_t>(request, "offset").value_or(0);
      q.limit = integer_param<std::size_t>(request, "limit").value_or(kDefaultPageLimit);
      if (q.limit < 1 || q.limit > kMaxPageLimit) throw BadRequest("malformed parameter 'limit'");
      const ResultPage page = index.query(q);
      json items = json::array();
      for (const ComponentRecord* c : page.items) items.push_back(summary_json(index, *c));
      return respond(200, {{"items", items},
                           {"total", page.total},
                           {"offset", page.offset},
                           {"limit", page.limit}});
    }

    if (path == "/demographics") {
      if (request.method != "GET") return error_response(405, "method not allowed");
      const Demographics d = compute_demographics(index, parse_facets(request));
      json classes = json::object();
      for (const auto& [cls, n] : d.class_counts) classes[std::string(to_string(cls))] = n;
      json colors = json::object();
      for (const auto& [color, n] : d.color_counts) colors[std::string(to_string(color))] = n;
      json sizes = json::array();
      for (const auto& p : d.size_points) sizes.push_back({p.w, p.h});
      return respond(200, {{"class_counts", classes},
                           {"color_counts", colors},
                           {"size_points", sizes},
                           {"size_point_total", d.size_point_total},
                           {"category_counts", d.category_counts},
                           {"total", d.size_point_total}});
    }

    if (path.rfind("/component/", 0) == 0) {
      if (request.method != "GET") return error_response(405, "method not allowed");
      std::string id = path.substr(std::string("/component/").size());
      bool similar = false;
      if (constexpr std::string_view kSuffix = "/similar";
          id.size() > kSuffix.size() && id.ends_with(kSuffix)) {
        id.resize(id.size() - kSuffix.size());
        similar = true;
      }
      const ComponentRecord* c = index.find(id);
      if (!c) return error_response(404, "unknown component '" + id + "'");

      if (similar) {
        const std::size_t k = integer_param<std::size_t>(request, "k").value_or(6);
        if (k < 1 || k > kMaxPageLimit) throw BadRequest("malformed parameter 'k'");
        json items = json::array();
        for (const auto& s : index.similar(id, k, config_.similarity)) {
          json item = summary_json(index, *index.find(s.component_id));
          item["score"] = s.score;
          items.push_back(std::move(item));
        }
        return respond(200, {{"component_id", id}, {"k", k}, {"items", items}});
      }

      const ScreenshotRecord& shot = snap->screenshots.at(c->screenshot_id);
      return respond(200, {{"component", to_json(*c)},
                           {"box", box_json(c->box)},
                           {"thumbnail", uri_of(StoreLayout::thumbnail_relpath(c->component_id))},
                           {"app", to_json(index.app_of(*c))},
                           {"screenshot",
                            {{"screenshot_id", shot.screenshot_id},
                             {"kind", to_string(shot.kind)},
                             {"uri", uri_of(shot.image)},
                             {"width", shot.width},
                             {"height", shot.height}}}});
    }

    if (path == "/compare") {
      if (request.method != "GET") return error_response(405, "method not allowed");
      const auto raw = param(request, "companies");
      if (!raw) throw BadRequest("malformed parameter 'companies'");
      const auto names = split_companies(*raw);
      if (names.empty()) throw BadRequest("malformed parameter 'companies'");
      const ComparisonTable table = compare(index, names);
      json rows = json::array();
      json components = json::object();
      for (const auto& row : table.rows) {
        json cells = json::array();
        for (const auto& cell : row.cells) {
          if (!cell) {
            cells.push_back(nullptr);
            continue;
          }
          cells.push_back(*cell);
          for (const auto& id : *cell) components[id] = summary_json(index, *index.find(id));
        }
        rows.push_back({{"class", to_string(row.cls)}, {"cells", cells}});
      }
      json dists = json::array();
      for (const auto& dist : table.color_dist) {
        json d = json::object();
        for (const auto& [color, fraction] : dist) d[std::string(to_string(color))] = fraction;
        dists.push_back(std::move(d));
      }
      return respond(200, {{"companies", table.companies},
                           {"rows", rows},
                           {"color_dist", dists},
                           {"components", components}});
    }

    if (path == "/companies") {
      if (request.method != "GET") return error_response(405, "method not allowed");
      return respond(200, {{"companies", eligible_companies(index, config_.companies)}});
    }

    if (path == "/notebook") {
      if (request.method == "GET") {
        json entries = json::array();
        for (const auto& e : notebook_.entries()) {
          entries.push_back({{"entry_id", e.entry_id},
                             {"component_id", e.component_id},
                             {"note", e.note},
                             {"created_at", e.created_at}});
        }
        return respond(200, {{"entries", entries}});
      }
      if (request.method == "POST") {
        json body;
        try {
          body = json::parse(request.body);
        } catch (const json::parse_error&) {
          throw BadRequest("malformed body");
        }
        if (!body.is_object() || !body.contains("component_id") || !body["component_id"].is_string() ||
            (body.contains("note") && !body["note"].is_string())) {
          throw BadRequest("malformed body");
        }
        const std::string component_id = body["component_id"].get<std::string>();
        if (!index.find(component_id)) return error_response(404, "unknown component '" + component_id + "'");
        const NotebookEntry e = notebook_.add(component_id, body.value("note", std::string{}));
        return respond(201, {{"entry_id", e.entry_id},
                             {"component_id", e.component_id},
                             {"note", e.note},
                             {"created_at", e.created_at}});
      }
      return error_response(405, "method not allowed");
    }

    if (path.rfind("/notebook/", 0) == 0) {
      if (request.method != "DELETE") return error_response(405, "method not allowed");
      const std::string entry_id = path.substr(std::string("/notebook/").size());
      if (!notebook_.remove(entry_id)) return error_response(404, "unknown notebook entry '" + entry_id + "'");
      return respond(200, {{"deleted", entry_id}});
    }

    return error_response(404, "no route for " + path);
  } catch (const BadRequest& e) {
    return error_response(400, e.what());
  } catch (const QueryError& e) {
    return error_response(e.kind() == QueryError::Kind::kInvertedRange ? 422 : 400, e.what());
  } catch (const NotFoundError& e) {
    return error_response(404, e.what());
  } catch (const PreconditionError& e) {
    return error_response(400, e.what());
  }
}

struct HttpServer::Impl {
  explicit Impl(GalleryService& s) : service(s) {}

  GalleryService& service;
  httplib::Server server;
  std::thread watcher;
  std::mutex mutex;
  std::condition_variable stopping;
  bool stop_requested = false;
};

HttpServer::HttpServer(GalleryService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  server.set_mount_point("/images", impl_->service.store().images().string());

  const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest request{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) request.params.emplace(k, v);
    HttpResponse response;
    try {
      response = impl_->service.handle(request);
    } catch (const std::exception& e) {
      response = error_response(500, e.what());
    }
    res.status = response.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(response.body, response.content_type);
  };
  server.Get(R"(/.*)", dispatch);
  server.Post(R"(/.*)", dispatch);
  server.Delete(R"(/.*)", dispatch);

  // Reload the index when an ingest replaces components.jsonl.
  impl_->watcher = std::thread([impl = impl_.get()] {
    const fs::path watched = impl->service.store().components();
    std::error_code ec;
    auto last = fs::last_write_time(watched, ec);
    std::unique_lock lock(impl->mutex);
    while (!impl->stopping.wait_for(lock, std::chrono::milliseconds(500),
                                    [impl] { return impl->stop_requested; })) {
      const auto now = fs::last_write_time(watched, ec);
      if (ec || now == last) continue;
      last = now;
      try {
        impl->service.reload();
      } catch (const std::exception& e) {
        std::cerr << "reload failed: " << e.what() << '\n';
      }
    }
  });
}

HttpServer::~HttpServer() {
  stop();
  if (impl_->watcher.joinable()) impl_->watcher.join();
}

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen_after_bind() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  {
    std::lock_guard lock(impl_->mutex);
    impl_->stop_requested = true;
  }
  impl_->stopping.notify_all();
  impl_->server.stop();
}

}  // namespace gallery
