#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gallery/model.hpp"

namespace gallery {

inline constexpr std::size_t kMaxPageLimit = 200;
inline constexpr std::size_t kDefaultPageLimit = 30;

// Conjunctive facet query. Absent facets match everything.
struct QuerySpec {
  std::optional<ComponentClass> cls;
  std::optional<std::string> category;
  std::optional<std::string> developer;  // compared by company_key
  std::optional<ColorName> color;
  std::optional<std::string> text;       // substring of normalized text
  std::optional<int> min_w;
  std::optional<int> max_w;
  std::optional<int> min_h;
  std::optional<int> max_h;
  std::size_t offset = 0;
  std::size_t limit = kDefaultPageLimit;

  // Throws QueryError for limit outside [1, 200], negative sizes or min > max.
  void validate() const;
};

// Items point into the Index that produced the page.
struct ResultPage {
  std::vector<const ComponentRecord*> items;
  std::size_t total = 0;
  std::size_t offset = 0;
  std::size_t limit = 0;
};

struct SimilarityWeights {
  double app = 0.2;
  double developer = 0.2;
  double cls = 0.2;
  double color = 0.2;
  double text = 0.2;

  // Throws PreconditionError unless all weights are >= 0 and sum to 1 ± 1e-9.
  void validate() const;
};

struct ScoredComponent {
  std::string component_id;
  double score = 0.0;

  friend bool operator==(const ScoredComponent&, const ScoredComponent&) = default;
};

// Immutable multi-facet index. Components are held in ranking order
// (owning-app downloads descending, then component_id ascending); every
// posting list is a sorted vector of ranking positions.
class Index {
 public:
  // Throws LoadError naming the component when its app_id is unknown, or when
  // component ids collide.
  static std::shared_ptr<const Index> build(std::vector<ComponentRecord> components,
                                            std::vector<AppRecord> apps);

  std::size_t size() const noexcept { return components_.size(); }
  std::span<const ComponentRecord> components() const noexcept { return components_; }
  std::span<const AppRecord> apps() const noexcept { return apps_; }

  const ComponentRecord* find(std::string_view component_id) const;
  const AppRecord& app_of(const ComponentRecord& component) const;
  const AppRecord* find_app(std::string_view app_id) const;

  // Ranking positions of all matches, ascending (ranking order). Validates q;
  // ignores offset/limit.
  std::vector<std::size_t> match(const QuerySpec& q) const;

  ResultPage query(const QuerySpec& q) const;

  // Top-k by score excluding the query component; ties by component_id.
  // Throws NotFoundError for an unknown id.
  std::vector<ScoredComponent> similar(std::string_view component_id, std::size_t k,
                                       const SimilarityWeights& weights = {}) const;

  double similarity(const ComponentRecord& a, const ComponentRecord& b,
                    const SimilarityWeights& weights) const;

  // company_key -> indexes into apps(), in app order.
  const std::map<std::string, std::vector<std::size_t>>& companies() const noexcept {
    return apps_by_company_;
  }

 private:
  struct Posting {
    std::map<std::string, std::vector<std::size_t>> by_key;
    std::span<const std::size_t> find(const std::string& key) const;
  };

  Index() = default;

  std::vector<ComponentRecord> components_;
  std::vector<AppRecord> apps_;
  std::vector<std::size_t> app_index_;                   // per component
  std::vector<std::string> company_of_app_;              // per app
  std::vector<std::string> texts_;                       // normalized, per component
  std::vector<std::vector<std::string>> tokens_;         // per component
  std::map<std::string, std::size_t> position_by_id_;
  std::map<std::string, std::size_t> app_by_id_;
  std::map<std::string, std::vector<std::size_t>> apps_by_company_;

  std::array<std::vector<std::size_t>, kComponentClassCount> by_class_;
  std::array<std::vector<std::size_t>, kColorNameCount> by_color_;
  Posting by_category_;
  Posting by_company_;
  // (dimension, position) sorted ascending, for range scans.
  std::vector<std::pair<int, std::size_t>> by_width_;
  std::vector<std::pair<int, std::size_t>> by_height_;
};

}  // namespace gallery
