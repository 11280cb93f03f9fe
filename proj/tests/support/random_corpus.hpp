#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gallery/index.hpp"
#include "gallery/model.hpp"

namespace gallery::testing {

struct RandomCorpus {
  std::vector<AppRecord> apps;
  std::vector<ComponentRecord> components;
};

inline const std::vector<std::string>& corpus_words() {
  static const std::vector<std::string> words = {
      "Login", "LOG IN", "sign up", "Cancel", "OK", "Next", "  submit  ", "Buy now",
      "Play", "pause", "Settings", "share", "Straße", "STRASSE", "", ""};
  return words;
}

inline const std::vector<std::string>& corpus_categories() {
  static const std::vector<std::string> c = {"Games", "Tools", "Social", "Finance", "Music"};
  return c;
}

inline const std::vector<std::string>& corpus_developers() {
  static const std::vector<std::string> d = {"Acme", "acme ", "Globex", "Initech", "Umbrella",
                                             "Hooli", "ÆON"};
  return d;
}

// Random histograms over a few buckets so primaries vary and ties occur.
inline ColorProfile random_profile(std::mt19937_64& rng) {
  std::array<std::size_t, kColorNameCount> counts{};
  std::uniform_int_distribution<std::size_t> bucket(0, kColorNameCount - 1);
  std::uniform_int_distribution<std::size_t> amount(1, 4);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  for (std::size_t i = 0; i < n; ++i) counts[bucket(rng)] += amount(rng);
  return ColorProfile::from_counts(counts);
}

inline RandomCorpus make_random_corpus(std::size_t components, std::size_t apps,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomCorpus corpus;
  auto pick = [&](const auto& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  for (std::size_t a = 0; a < apps; ++a) {
    AppRecord app;
    app.app_id = "app" + std::to_string(a);
    app.name = "App " + std::to_string(a);
    app.category = pick(corpus_categories());
    app.developer = pick(corpus_developers());
    // Small range so download ties are common.
    app.downloads = std::uniform_int_distribution<std::int64_t>(0, 20)(rng) * 1000;
    app.rating = std::uniform_int_distribution<int>(0, 50)(rng) / 10.0;
    corpus.apps.push_back(app);
  }
  std::uniform_int_distribution<int> dim(4, 200);
  for (std::size_t i = 0; i < components; ++i) {
    ComponentRecord c;
    c.component_id = "c" + std::to_string(i);
    c.app_id = pick(corpus.apps).app_id;
    c.screenshot_id = c.app_id + "-s0";
    c.cls = pick(kAllComponentClasses);
    c.box = BoundingBox{dim(rng), dim(rng), dim(rng), dim(rng)};
    c.color = random_profile(rng);
    c.text = pick(corpus_words()) + (rng() % 3 == 0 ? " " + pick(corpus_words()) : "");
    corpus.components.push_back(std::move(c));
  }
  return corpus;
}

inline QuerySpec random_query(std::mt19937_64& rng, double facet_probability = 0.3) {
  std::bernoulli_distribution use(facet_probability);
  auto pick = [&](const auto& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  QuerySpec q;
  if (use(rng)) q.cls = pick(kAllComponentClasses);
  if (use(rng)) q.category = pick(corpus_categories());
  if (use(rng)) q.developer = pick(corpus_developers());
  if (use(rng)) q.color = pick(kAllColorNames);
  if (use(rng)) {
    static const std::vector<std::string> needles = {"log", "LOGIN", "in", "strasse", " Sign  Up",
                                                     "o", "zzz"};
    q.text = pick(needles);
  }
  std::uniform_int_distribution<int> dim(1, 220);
  if (use(rng)) q.min_w = dim(rng);
  if (use(rng)) q.max_w = std::max(q.min_w.value_or(0), dim(rng));
  if (use(rng)) q.min_h = dim(rng);
  if (use(rng)) q.max_h = std::max(q.min_h.value_or(0), dim(rng));
  q.limit = kMaxPageLimit;
  return q;
}

// Every id returned by paging through `q` with page size `limit`.
inline std::vector<std::string> walk_pages(const Index& index, QuerySpec q, std::size_t limit) {
  std::vector<std::string> ids;
  q.limit = limit;
  q.offset = 0;
  while (true) {
    const ResultPage page = index.query(q);
    for (const auto* c : page.items) ids.push_back(c->component_id);
    if (page.items.empty() || q.offset + page.items.size() >= page.total) break;
    q.offset += page.items.size();
  }
  return ids;
}

}  // namespace gallery::testing
