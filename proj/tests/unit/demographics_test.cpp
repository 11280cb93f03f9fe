#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "gallery/demographics.hpp"
#include "random_corpus.hpp"

namespace gallery {
namespace {

template <typename Map>
std::size_t sum(const Map& m) {
  std::size_t total = 0;
  for (const auto& [_, n] : m) total += n;
  return total;
}

ColorProfile solid(ColorName name) {
  std::array<std::size_t, kColorNameCount> counts{};
  counts[static_cast<std::size_t>(name)] = 1;
  return ColorProfile::from_counts(counts);
}

TEST(Demographics, ThreeButtons) {
  std::vector<AppRecord> apps{{"a", "A", "Tools", "Acme", 1, 1.0}};
  std::vector<ComponentRecord> cs(3);
  const ColorName colors[] = {ColorName::kRed, ColorName::kRed, ColorName::kBlue};
  for (int i = 0; i < 3; ++i) {
    cs[i].component_id = "b" + std::to_string(i);
    cs[i].app_id = "a";
    cs[i].box = {0, 0, 10 + i, 5};
    cs[i].color = solid(colors[i]);
  }
  const auto index = Index::build(cs, apps);
  const Demographics d = compute_demographics(*index, {});
  EXPECT_EQ(d.class_counts, (std::map<ComponentClass, std::size_t>{{ComponentClass::kButton, 3}}));
  EXPECT_EQ(d.color_counts,
            (std::map<ColorName, std::size_t>{{ColorName::kRed, 2}, {ColorName::kBlue, 1}}));
  EXPECT_EQ(d.category_counts, (std::map<std::string, std::size_t>{{"Tools", 3}}));
  EXPECT_EQ(d.size_points.size(), 3u);
  EXPECT_EQ(d.size_points[0], (SizePoint{10, 5}));
}

TEST(Demographics, EmptyMatchSet) {
  const auto corpus = testing::make_random_corpus(20, 3, 1);
  const auto index = Index::build(corpus.components, corpus.apps);
  QuerySpec q;
  q.text = "no such text anywhere";
  const Demographics d = compute_demographics(*index, q);
  EXPECT_TRUE(d.class_counts.empty());
  EXPECT_TRUE(d.color_counts.empty());
  EXPECT_TRUE(d.category_counts.empty());
  EXPECT_TRUE(d.size_points.empty());
  EXPECT_EQ(d.size_point_total, 0u);
}

TEST(Demographics, ConservationAgainstQueryTotal) {
  const auto corpus = testing::make_random_corpus(1000, 40, 2);
  const auto index = Index::build(corpus.components, corpus.apps);
  const Demographics all = compute_demographics(*index, {});
  EXPECT_EQ(sum(all.class_counts), 1000u);
  EXPECT_EQ(all.size_points.size(), 1000u);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    QuerySpec q = testing::random_query(rng);
    q.offset = rng() % 20;
    q.limit = 1 + rng() % 10;
    const std::size_t total = index->query(q).total;
    const Demographics d = compute_demographics(*index, q);
    EXPECT_EQ(sum(d.class_counts), total);
    EXPECT_EQ(sum(d.color_counts), total);
    EXPECT_EQ(sum(d.category_counts), total);
    EXPECT_EQ(d.size_points.size(), total);
    EXPECT_EQ(d.size_point_total, total);
  }
}

TEST(Demographics, ClassComposition) {
  const auto corpus = testing::make_random_corpus(500, 20, 4);
  const auto index = Index::build(corpus.components, corpus.apps);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    QuerySpec q = testing::random_query(rng);
    q.cls.reset();
    for (ComponentClass c : kAllComponentClasses) {
      QuerySpec restricted = q;
      restricted.cls = c;
      const Demographics d = compute_demographics(*index, restricted);
      const std::size_t total = index->query(restricted).total;
      if (total == 0) {
        EXPECT_TRUE(d.class_counts.empty());
      } else {
        EXPECT_EQ(d.class_counts, (std::map<ComponentClass, std::size_t>{{c, total}}));
      }
    }
  }
}

TEST(Demographics, SizePointsSubsampledBeyondBound) {
  const auto corpus = testing::make_random_corpus(12000, 50, 6);
  const auto index = Index::build(corpus.components, corpus.apps);
  const Demographics a = compute_demographics(*index, {});
  EXPECT_EQ(a.size_points.size(), kMaxSizePoints);
  EXPECT_EQ(a.size_point_total, 12000u);
  EXPECT_EQ(sum(a.class_counts), 12000u);
  EXPECT_EQ(compute_demographics(*index, {}).size_points, a.size_points);
}

}  // namespace
}  // namespace gallery
