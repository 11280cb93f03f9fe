#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gallery/error.hpp"
#include "gallery/notebook.hpp"
#include "gallery/records_json.hpp"
#include "store_fixture.hpp"
#include "temp_dir.hpp"

namespace gallery {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

SynthOptions small() {
  SynthOptions o;
  o.apps = 4;
  return o;
}

TEST(Ingest, SyntheticCorpusEndToEnd) {
  testing::TempDir dir;
  const SynthSummary synth = generate_synthetic_corpus(dir / "annotated", dir / "intro", small());
  auto detector = stub_detector(synthetic_detector_rules());
  IngestOptions options;
  options.detector = detector.get();
  const StoreLayout store(dir / "store");
  const IngestSummary s = ingest(dir / "annotated", dir / "intro", store, options);

  EXPECT_EQ(s.apps, 4u);
  EXPECT_EQ(s.annotated_screenshots, 12u);
  EXPECT_EQ(s.intro_screenshots, 8u);
  EXPECT_EQ(s.dropped_annotations, synth.distractors);
  EXPECT_EQ(s.components, synth.annotated_components + synth.intro_components);

  const StoreContents contents = load_store(store);
  EXPECT_EQ(contents.components.size(), s.components);
  for (const auto& c : contents.components) {
    EXPECT_TRUE(fs::exists(store.root() / StoreLayout::thumbnail_relpath(c.component_id)))
        << c.component_id;
  }
  // Planted texts come back through the sidecar OCR.
  std::size_t with_text = 0;
  for (const auto& c : contents.components) with_text += !c.text.empty();
  EXPECT_GT(with_text, 0u);
}

TEST(Ingest, Deterministic) {
  testing::TempDir a, b;
  testing::build_synthetic_store(a.path(), small());
  testing::build_synthetic_store(b.path(), small());
  EXPECT_EQ(slurp(a / "store" / "components.jsonl"), slurp(b / "store" / "components.jsonl"));
  EXPECT_EQ(slurp(a / "store" / "screenshots.jsonl"), slurp(b / "store" / "screenshots.jsonl"));
}

TEST(Ingest, WithoutDetectorKeepsOnlyMetadata) {
  testing::TempDir dir;
  generate_synthetic_corpus(dir / "annotated", dir / "intro", small());
  const StoreLayout store(dir / "store");
  ingest(dir / "annotated", dir / "intro", store, {});
  for (const auto& c : load_store(store).components) EXPECT_EQ(c.source, ComponentSource::kMetadata);

  auto detector = stub_detector(synthetic_detector_rules());
  const std::size_t detected = redecompose(store, *detector, {});
  EXPECT_GT(detected, 0u);
  std::size_t from_detector = 0;
  for (const auto& c : load_store(store).components) from_detector += c.source == ComponentSource::kDetector;
  EXPECT_EQ(from_detector, detected);
  EXPECT_EQ(redecompose(store, *detector, {}), detected);
}

TEST(Ingest, ReingestKeepsNotebook) {
  testing::TempDir dir;
  testing::build_synthetic_store(dir.path(), small());
  const StoreLayout store(dir / "store");
  Notebook(store.notebook_log()).add("x", "keep me");
  testing::build_synthetic_store(dir.path(), small());
  EXPECT_EQ(Notebook(store.notebook_log()).entries().size(), 1u);
}

TEST(Ingest, NothingToIngest) {
  testing::TempDir dir;
  EXPECT_THROW(ingest(std::nullopt, std::nullopt, StoreLayout(dir.path()), {}), PreconditionError);
}

TEST(Ingest, ConflictingAppRecords) {
  testing::TempDir dir;
  generate_synthetic_corpus(dir / "annotated", dir / "intro", small());
  std::string apps = slurp(dir / "intro" / "apps.jsonl");
  apps.replace(apps.find("\"downloads\":"), 12, "\"downloads\":1,\"x\":");
  std::ofstream(dir / "intro" / "apps.jsonl") << apps;
  EXPECT_THROW(ingest(dir / "annotated", dir / "intro", StoreLayout(dir / "store"), {}), LoadError);
}

TEST(StoreLayout, ThumbnailNamesAreEscaped) {
  EXPECT_EQ(StoreLayout::thumbnail_relpath("a-s0-c1"), fs::path("images/thumbs/a-s0-c1.png"));
  EXPECT_NE(StoreLayout::thumbnail_relpath("a/b"), StoreLayout::thumbnail_relpath("a~2Fb"));
  EXPECT_EQ(StoreLayout::thumbnail_relpath("../x").parent_path(), fs::path("images/thumbs"));
}

TEST(StoreConfig, LoadedWhenPresent) {
  testing::TempDir dir;
  const StoreLayout store(dir.path());
  EXPECT_EQ(load_store_config(store).min_confidence, 0.5);
  std::ofstream(store.config()) << "min_confidence = 0.7\n";
  EXPECT_EQ(load_store_config(store).min_confidence, 0.7);
}

}  // namespace
}  // namespace gallery
