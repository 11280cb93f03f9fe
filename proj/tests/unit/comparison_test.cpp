#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "gallery/comparison.hpp"
#include "gallery/error.hpp"
#include "random_corpus.hpp"

namespace gallery {
namespace {

ComponentRecord button(std::string id, std::string app) {
  ComponentRecord c;
  c.component_id = std::move(id);
  c.app_id = std::move(app);
  std::array<std::size_t, kColorNameCount> counts{};
  counts[0] = 1;
  c.color = ColorProfile::from_counts(counts);
  return c;
}

// One company with nine apps downloaded 9..1 times, one button each.
struct NineButtons {
  std::vector<AppRecord> apps;
  std::vector<ComponentRecord> components;
};

NineButtons nine_buttons() {
  NineButtons f;
  for (int d = 1; d <= 9; ++d) {
    const std::string app = "app" + std::to_string(d);
    f.apps.push_back({app, app, "Tools", "Acme", d, 4.0});
    f.components.push_back(button("btn" + std::to_string(d), app));
  }
  f.apps.push_back({"other", "Other", "Tools", "Globex", 100, 4.0});
  f.components.push_back(button("g", "other"));
  return f;
}

TEST(EligibleCompanies, Thresholds) {
  std::vector<AppRecord> apps{{"a1", "", "", "A", 1'000'000, 4},
                              {"a2", "", "", "A", 5, 4},
                              {"b1", "", "", "B", 10, 4}};
  const auto index = Index::build({}, apps);
  EXPECT_EQ(eligible_companies(*index, {2, 0}), (std::vector<std::string>{"a"}));
  EXPECT_EQ(eligible_companies(*index, {1, 0}), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(eligible_companies(*index, {1, 100}), (std::vector<std::string>{"a"}));
  EXPECT_TRUE(eligible_companies(*Index::build({}, {}), {1, 0}).empty());
}

TEST(Compare, NineButtonsTopSix) {
  const auto f = nine_buttons();
  const auto index = Index::build(f.components, f.apps);
  const ComparisonTable t = compare(*index, {"acme", "globex"});
  const auto& cell = t.rows[0].cells[0];
  ASSERT_TRUE(cell.has_value());
  EXPECT_EQ(*cell, (std::vector<std::string>{"btn9", "btn8", "btn7", "btn6", "btn5", "btn4"}));
  EXPECT_EQ(*t.rows[0].cells[1], (std::vector<std::string>{"g"}));
}

TEST(Compare, NoneForMissingClassAndShape) {
  const auto f = nine_buttons();
  const auto index = Index::build(f.components, f.apps);
  const ComparisonTable t = compare(*index, {"acme", "globex"});
  EXPECT_EQ(t.rows.size(), 11u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_EQ(t.rows[r].cls, kAllComponentClasses[r]);
    ASSERT_EQ(t.rows[r].cells.size(), 2u);
    if (r > 0) {
      EXPECT_FALSE(t.rows[r].cells[0].has_value());
      EXPECT_FALSE(t.rows[r].cells[1].has_value());
    }
  }
}

TEST(Compare, RatingBreaksDownloadTies) {
  std::vector<AppRecord> apps{{"lo", "", "", "A", 10, 3.0}, {"hi", "", "", "A", 10, 4.5}};
  const auto index = Index::build({button("a", "lo"), button("b", "hi"), button("c", "lo")}, apps);
  EXPECT_EQ(*compare(*index, {"a"}).rows[0].cells[0], (std::vector<std::string>{"b", "a", "c"}));
}

TEST(Compare, Errors) {
  const auto f = nine_buttons();
  const auto index = Index::build(f.components, f.apps);
  EXPECT_THROW(compare(*index, {"nobody"}), NotFoundError);
  EXPECT_THROW(compare(*index, {}), PreconditionError);
}

TEST(Compare, RandomCorpusInvariants) {
  const auto corpus = testing::make_random_corpus(600, 30, 11);
  const auto index = Index::build(corpus.components, corpus.apps);
  std::vector<std::string> companies;
  for (const auto& [key, _] : index->companies()) companies.push_back(key);
  const ComparisonTable t = compare(*index, companies);
  ASSERT_EQ(t.companies, companies);
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < companies.size(); ++j) {
      QuerySpec q;
      q.cls = row.cls;
      q.developer = companies[j];
      const std::size_t total = index->query(q).total;
      EXPECT_EQ(!row.cells[j].has_value(), total == 0);
      if (row.cells[j]) EXPECT_LE(row.cells[j]->size(), 6u);
    }
  }
  for (const auto& dist : t.color_dist) {
    double s = 0;
    for (const auto& [_, f] : dist) s += f;
    EXPECT_NEAR(s, 1.0, 1e-9);
  }

  std::vector<std::string> reversed(companies.rbegin(), companies.rend());
  const ComparisonTable r = compare(*index, reversed);
  for (std::size_t row = 0; row < 11; ++row) {
    for (std::size_t j = 0; j < companies.size(); ++j) {
      EXPECT_EQ(r.rows[row].cells[companies.size() - 1 - j], t.rows[row].cells[j]);
    }
  }
}

}  // namespace
}  // namespace gallery
