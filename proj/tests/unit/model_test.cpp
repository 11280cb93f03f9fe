#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "gallery/model.hpp"

namespace gallery {
namespace {

std::vector<AppRecord> two_apps() {
  return {{"a1", "Alpha", "Tools", "Acme", 1000, 4.5}, {"a2", "Beta", "Games", "Globex", 50, 3.0}};
}

std::vector<ScreenshotRecord> three_shots() {
  ScreenshotRecord s1{"s1", "a1", ScreenshotKind::kAnnotatedRuntime, "s1.png", 100, 200,
                      std::vector<Annotation>{{ComponentClass::kButton, {0, 0, 10, 10}}}};
  ScreenshotRecord s2{"s2", "a1", ScreenshotKind::kAnnotatedRuntime, "s2.png", 100, 200,
                      std::vector<Annotation>{}};
  ScreenshotRecord s3{"s3", "a2", ScreenshotKind::kAppIntroduction, "s3.png", 50, 50, std::nullopt};
  return {s1, s2, s3};
}

TEST(ComponentClass, RoundTripsEveryValue) {
  for (ComponentClass c : kAllComponentClasses) {
    EXPECT_EQ(parse_component_class(to_string(c)), c);
  }
}

TEST(ComponentClass, RejectsUnknownNames) {
  EXPECT_FALSE(parse_component_class("text_view"));
  EXPECT_FALSE(parse_component_class("Button"));
  EXPECT_FALSE(parse_component_class(""));
}

TEST(ValidateCorpus, ConsistentFixtureHasNoViolations) {
  EXPECT_TRUE(validate_corpus(two_apps(), three_shots()).empty());
}

TEST(ValidateCorpus, UnknownAppIsNamed) {
  auto shots = three_shots();
  shots[1].app_id = "ghost";
  const auto v = validate_corpus(two_apps(), shots);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("ghost"), std::string::npos);
}

TEST(ValidateCorpus, ReportsDuplicatesAndOutOfBounds) {
  auto apps = two_apps();
  apps.push_back(apps[0]);
  auto shots = three_shots();
  shots[2].screenshot_id = "s1";
  (*shots[0].components)[0].box = {95, 0, 10, 10};
  const auto v = validate_corpus(apps, shots);
  EXPECT_EQ(v.size(), 3u);
}

TEST(ValidateCorpus, OrderInsensitiveAndIdempotent) {
  auto apps = two_apps();
  apps.push_back({"", "x", "x", "x", -1, 9});
  auto shots = three_shots();
  shots[0].app_id = "ghost";
  shots[2].components = std::vector<Annotation>{};
  shots.push_back(shots[1]);
  const auto expected = validate_corpus(apps, shots);
  ASSERT_GE(expected.size(), 4u);
  EXPECT_EQ(validate_corpus(apps, shots), expected);

  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(apps.begin(), apps.end(), rng);
    std::shuffle(shots.begin(), shots.end(), rng);
    EXPECT_EQ(validate_corpus(apps, shots), expected);
  }
}

TEST(CompanyKey, TrimsAndCaseFolds) {
  EXPECT_EQ(company_key("  Acme Inc "), company_key("ACME INC"));
  EXPECT_NE(company_key("Acme"), company_key("Acme Inc"));
}

TEST(BoundingBox, FitsWithin) {
  EXPECT_TRUE((BoundingBox{0, 0, 10, 10}.fits_within(10, 10)));
  EXPECT_FALSE((BoundingBox{1, 0, 10, 10}.fits_within(10, 10)));
  EXPECT_FALSE((BoundingBox{0, 0, 0, 10}.fits_within(10, 10)));
}

}  // namespace
}  // namespace gallery
