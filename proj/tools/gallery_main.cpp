// gallery: command-line front end for corpus ingest, decomposition,
// augmentation, detection evaluation and the HTTP service.

#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gallery/crawl.hpp"
#include "gallery/decompose.hpp"
#include "gallery/error.hpp"
#include "gallery/eval.hpp"
#include "gallery/image.hpp"
#include "gallery/ingest.hpp"
#include "gallery/records_json.hpp"
#include "gallery/service.hpp"
#include "gallery/store.hpp"
#include "gallery/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed ^ (salt * 0x9e3779b97f4a7c15ULL);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::pair<double, double> parse_scale(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--scale", "expected LO:HI");
  return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

std::pair<int, int> parse_canvas(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--canvas", "expected WxH");
  return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

// Serves pages recorded as JSON lines: {url, links, app?, intro_images?}.
class RecordedFetcher final : public gallery::Fetcher {
 public:
  explicit RecordedFetcher(const fs::path& pages) {
    gallery::read_jsonl(pages, [&](const json& j, std::size_t) {
      gallery::CrawlPage page;
      page.url = j.at("url").get<std::string>();
      for (const auto& link : j.value("links", json::array())) {
        const auto url = link.get<std::string>();
        if (std::find(page.links.begin(), page.links.end(), url) == page.links.end()) page.links.push_back(url);
      }
      if (j.contains("app")) page.app = gallery::app_from_json(j["app"]);
      page.intro_images = j.value("intro_images", std::vector<std::string>{});
      pages_.emplace(page.url, std::move(page));
    });
  }

  gallery::CrawlPage fetch(const std::string& url) override {
    const auto it = pages_.find(url);
    if (it == pages_.end()) throw gallery::FetchError("not recorded");
    return it->second;
  }

 private:
  std::map<std::string, gallery::CrawlPage> pages_;
};

int run_serve(const fs::path& store, const std::string& host, int port) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  gallery::GalleryService service(store);
  gallery::HttpServer server(service);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "gallery: cannot bind " << host << ":" << port << '\n';
    return 1;
  }
  std::thread waiter([&] {
    int received = 0;
    sigwait(&signals, &received);
    server.stop();
  });
  waiter.detach();
  std::cout << "listening on http://" << host << ":" << bound << " ("
            << service.index()->size() << " components)" << std::endl;
  server.listen_after_bind();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GUI component gallery: ingest, decompose, evaluate and serve"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic annotated + introduction corpus");
  fs::path synth_annotated, synth_intro;
  gallery::SynthOptions synth_options;
  synth->add_option("--annotated", synth_annotated, "Output directory for the annotated corpus")->required();
  synth->add_option("--intro", synth_intro, "Output directory for the introduction corpus")->required();
  synth->add_option("--apps", synth_options.apps, "Number of apps")->capture_default_str();
  synth->add_option("--screens", synth_options.annotated_per_app, "Annotated screenshots per app")
      ->capture_default_str();
  synth->add_option("--posters", synth_options.intro_per_app, "Introduction screenshots per app")
      ->capture_default_str();
  synth->add_option("--seed", synth_options.seed, "Generator seed")->capture_default_str();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load corpora and build a store");
  std::optional<fs::path> ingest_annotated, ingest_intro;
  fs::path ingest_out;
  std::optional<fs::path> ingest_detections, ingest_config;
  bool ingest_no_detect = false;
  ingest->add_option("--annotated", ingest_annotated, "Annotated runtime corpus directory");
  ingest->add_option("--intro", ingest_intro, "App introduction corpus directory");
  ingest->add_option("--out", ingest_out, "Store directory")->required();
  ingest->add_option("--detector", ingest_detections, "detections.jsonl from an external detector");
  ingest->add_flag("--no-detect", ingest_no_detect, "Do not decompose introduction screenshots");
  ingest->add_option("--config", ingest_config, "Threshold config file");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "Re-run introduction screenshot decomposition");
  fs::path decompose_store;
  std::optional<fs::path> decompose_detections, decompose_export;
  std::optional<double> decompose_min_confidence;
  decompose->add_option("--store", decompose_store, "Store directory")->required()->envname("GALLERY_STORE");
  decompose->add_option("--detector", decompose_detections, "detections.jsonl from an external detector");
  decompose->add_option("--min-confidence", decompose_min_confidence, "Detection confidence cut-off")
      ->check(CLI::Range(0.0, 1.0));
  decompose->add_option("--export", decompose_export, "Write detector components as detections.jsonl");

  // augment
  auto* augment = app.add_subcommand("augment", "Place annotated screenshots on poster canvases");
  fs::path augment_store, augment_out;
  std::uint64_t augment_seed = 0;
  std::string augment_scale = "0.5:0.9";
  std::string augment_canvas = "1080x1920";
  augment->add_option("--store", augment_store, "Store directory")->required()->envname("GALLERY_STORE");
  augment->add_option("--seed", augment_seed, "Random seed")->required();
  augment->add_option("--scale", augment_scale, "Scale range LO:HI")->capture_default_str();
  augment->add_option("--canvas", augment_canvas, "Canvas size WxH")->capture_default_str();
  augment->add_option("--out", augment_out, "Output corpus directory")->required();

  // detect
  auto* detect = app.add_subcommand("detect", "Run the synthetic stub detector over a corpus");
  fs::path detect_corpus, detect_out;
  detect->add_option("--corpus", detect_corpus, "Corpus directory (intro.jsonl or screenshots.jsonl)")->required();
  detect->add_option("--out", detect_out, "detections.jsonl to write")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Score detections against ground truth");
  fs::path eval_truth, eval_pred;
  double eval_iou = gallery::kDefaultIouThreshold;
  eval->add_option("--truth", eval_truth, "truths.jsonl")->required();
  eval->add_option("--pred", eval_pred, "detections.jsonl")->required();
  eval->add_option("--iou", eval_iou, "IoU match threshold")->capture_default_str();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  fs::path serve_store;
  int serve_port = 8080;
  std::string serve_host = "127.0.0.1";
  serve->add_option("--store", serve_store, "Store directory")->required()->envname("GALLERY_STORE");
  serve->add_option("--port", serve_port, "TCP port (0 = any)")->capture_default_str();
  serve->add_option("--host", serve_host, "Bind address")->capture_default_str();

  // crawl
  auto* crawl = app.add_subcommand("crawl", "Breadth-first crawl over recorded pages");
  fs::path crawl_pages;
  std::vector<std::string> crawl_seeds;
  std::size_t crawl_max = 100;
  crawl->add_option("--pages", crawl_pages, "Recorded pages (JSON lines)")->required();
  crawl->add_option("--seed", crawl_seeds, "Seed URL (repeatable)")->required();
  crawl->add_option("--max-pages", crawl_max, "Fetch budget")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const auto s = gallery::generate_synthetic_corpus(synth_annotated, synth_intro, synth_options);
      std::cout << json{{"apps", s.apps},
                        {"annotated_screenshots", s.annotated_screenshots},
                        {"intro_screenshots", s.intro_screenshots},
                        {"annotated_components", s.annotated_components},
                        {"intro_components", s.intro_components},
                        {"distractors", s.distractors}}
                       .dump()
                << '\n';
    } else if (*ingest) {
      gallery::IngestOptions options;
      options.config = ingest_config ? gallery::Config::load(*ingest_config) : gallery::Config{};
      std::unique_ptr<gallery::Detector> detector;
      if (ingest_detections) {
        detector = std::make_unique<gallery::FileDetector>(gallery::FileDetector::load(*ingest_detections));
      } else if (!ingest_no_detect) {
        detector = gallery::stub_detector(gallery::synthetic_detector_rules());
      }
      options.detector = detector.get();
      const gallery::StoreLayout store(ingest_out);
      const auto s = gallery::ingest(ingest_annotated, ingest_intro, store, options);
      if (ingest_config) fs::copy_file(*ingest_config, store.config(), fs::copy_options::overwrite_existing);
      std::cout << json{{"apps", s.apps},
                        {"annotated_screenshots", s.annotated_screenshots},
                        {"intro_screenshots", s.intro_screenshots},
                        {"components", s.components},
                        {"dropped_annotations", s.dropped_annotations}}
                       .dump()
                << '\n';
    } else if (*decompose) {
      const gallery::StoreLayout store(decompose_store);
      const gallery::Config config = gallery::load_store_config(store);
      gallery::DecomposeOptions options{decompose_min_confidence.value_or(config.min_confidence), config.color};
      std::unique_ptr<gallery::Detector> detector =
          decompose_detections
              ? std::make_unique<gallery::FileDetector>(gallery::FileDetector::load(*decompose_detections))
              : gallery::stub_detector(gallery::synthetic_detector_rules());
      const std::size_t n = gallery::redecompose(store, *detector, options);
      if (decompose_export) {
        std::vector<json> lines;
        for (const auto& c : gallery::load_store(store).components) {
          if (c.source != gallery::ComponentSource::kDetector) continue;
          lines.push_back(gallery::detection_line(c.screenshot_id, {c.cls, c.box, c.confidence}));
        }
        gallery::write_jsonl(*decompose_export, lines);
      }
      std::cout << json{{"detector_components", n}}.dump() << '\n';
    } else if (*augment) {
      const auto [lo, hi] = parse_scale(augment_scale);
      const auto [canvas_w, canvas_h] = parse_canvas(augment_canvas);
      const gallery::StoreLayout store(augment_store);
      const gallery::StoreContents contents = gallery::load_store(store);
      fs::create_directories(augment_out / "images");
      std::vector<gallery::ScreenshotRecord> records;
      std::vector<json> truths;
      std::uint64_t ordinal = 0;
      for (const auto& shot : contents.screenshots) {
        if (shot.kind != gallery::ScreenshotKind::kAnnotatedRuntime) continue;
        gallery::AugmentParams params;
        params.scale_lo = lo;
        params.scale_hi = hi;
        params.canvas_width = canvas_w;
        params.canvas_height = canvas_h;
        params.seed = mix_seed(augment_seed, ordinal++);
        auto result = gallery::augment_screenshot(shot, gallery::load_image(store.root() / shot.image), params);
        result.screenshot.image = "images/" + fs::path(shot.image).stem().string() + "-aug.png";
        gallery::save_image(result.canvas, augment_out / result.screenshot.image);
        for (const auto& t : result.truths) truths.push_back(gallery::truth_line(result.screenshot.screenshot_id, t));
        records.push_back(std::move(result.screenshot));
      }
      gallery::dump_corpus(contents.apps, records, augment_out);
      gallery::write_jsonl(augment_out / "truths.jsonl", truths);
      std::cout << json{{"screenshots", records.size()}, {"truths", truths.size()}}.dump() << '\n';
    } else if (*detect) {
      std::vector<gallery::ScreenshotRecord> shots;
      if (fs::exists(detect_corpus / "intro.jsonl")) {
        shots = gallery::load_intro_corpus(detect_corpus).screenshots;
      } else {
        shots = gallery::load_annotated_corpus(detect_corpus).screenshots;
      }
      const auto detector = gallery::stub_detector(gallery::synthetic_detector_rules());
      std::vector<json> lines;
      for (const auto& shot : shots) {
        const gallery::Image image = gallery::load_image(detect_corpus / shot.image);
        for (const auto& d : detector->detect(shot, image)) lines.push_back(gallery::detection_line(shot.screenshot_id, d));
      }
      gallery::write_jsonl(detect_out, lines);
      std::cout << json{{"screenshots", shots.size()}, {"detections", lines.size()}}.dump() << '\n';
    } else if (*eval) {
      const auto report = gallery::evaluate(gallery::load_detections(eval_pred), gallery::load_truths(eval_truth), eval_iou);
      std::cout << gallery::to_json(report).dump(2) << '\n';
    } else if (*serve) {
      return run_serve(serve_store, serve_host, serve_port);
    } else if (*crawl) {
      RecordedFetcher fetcher(crawl_pages);
      const auto result = gallery::crawl_bfs(crawl_seeds, fetcher, crawl_max);
      json pages = json::array();
      for (const auto& p : result.pages) pages.push_back(p.url);
      json failures = json::array();
      for (const auto& f : result.failures) failures.push_back({{"url", f.url}, {"reason", f.reason}});
      std::cout << json{{"pages", pages}, {"failures", failures}, {"frontier", gallery::frontier(result.pages)}}.dump()
                << '\n';
    }
  } catch (const gallery::Error& e) {
    std::cerr << "gallery: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "gallery: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
