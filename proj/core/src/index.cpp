#include "gallery/index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gallery/error.hpp"
#include "gallery/text.hpp"

namespace gallery {
namespace {

void check_dimension(const std::optional<int>& v, const char* name) {
  if (v && *v < 0) {
    throw QueryError(QueryError::Kind::kMalformed, std::string(name) + " must be non-negative");
  }
}

void check_range(const std::optional<int>& lo, const std::optional<int>& hi, const char* what) {
  if (lo && hi && *lo > *hi) {
    throw QueryError(QueryError::Kind::kInvertedRange, std::string("min_") + what + " > max_" + what);
  }
}

// Positions whose dimension lies in [lo, hi].
std::pair<std::vector<std::pair<int, std::size_t>>::const_iterator,
          std::vector<std::pair<int, std::size_t>>::const_iterator>
dimension_range(const std::vector<std::pair<int, std::size_t>>& sorted, const std::optional<int>& lo,
                const std::optional<int>& hi) {
  auto first = sorted.begin();
  auto last = sorted.end();
  if (lo) first = std::lower_bound(sorted.begin(), sorted.end(), std::pair<int, std::size_t>{*lo, 0});
  if (hi) {
    last = std::lower_bound(sorted.begin(), sorted.end(),
                            std::pair<int, std::size_t>{*hi + 1, std::size_t{0}});
  }
  if (last < first) last = first;
  return {first, last};
}

}  // namespace

void QuerySpec::validate() const {
  if (limit < 1 || limit > kMaxPageLimit) {
    throw QueryError(QueryError::Kind::kMalformed, "limit must be in [1, 200]");
  }
  check_dimension(min_w, "min_w");
  check_dimension(max_w, "max_w");
  check_dimension(min_h, "min_h");
  check_dimension(max_h, "max_h");
  check_range(min_w, max_w, "w");
  check_range(min_h, max_h, "h");
}

void SimilarityWeights::validate() const {
  const double parts[] = {app, developer, cls, color, text};
  double sum = 0.0;
  for (double w : parts) {
    if (!(w >= 0.0)) throw PreconditionError("similarity weights must be non-negative");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw PreconditionError("similarity weights must sum to 1");
}

std::span<const std::size_t> Index::Posting::find(const std::string& key) const {
  const auto it = by_key.find(key);
  if (it == by_key.end()) return {};
  return it->second;
}

std::shared_ptr<const Index> Index::build(std::vector<ComponentRecord> components,
                                          std::vector<AppRecord> apps) {
  auto index = std::shared_ptr<Index>(new Index());
  index->apps_ = std::move(apps);
  for (std::size_t i = 0; i < index->apps_.size(); ++i) {
    const AppRecord& app = index->apps_[i];
    if (!index->app_by_id_.emplace(app.app_id, i).second) {
      throw LoadError("duplicate app_id '" + app.app_id + "'");
    }
    index->company_of_app_.push_back(company_key(app.developer));
    index->apps_by_company_[index->company_of_app_.back()].push_back(i);
  }

  for (const auto& c : components) {
    if (!index->app_by_id_.contains(c.app_id)) {
      throw LoadError("component '" + c.component_id + "' references unknown app_id '" + c.app_id + "'");
    }
  }
  const auto downloads = [&](const ComponentRecord& c) {
    return index->apps_[index->app_by_id_.at(c.app_id)].downloads;
  };
  std::sort(components.begin(), components.end(), [&](const auto& a, const auto& b) {
    const auto da = downloads(a);
    const auto db = downloads(b);
    if (da != db) return da > db;
    return a.component_id < b.component_id;
  });
  index->components_ = std::move(components);

  const std::size_t n = index->components_.size();
  index->app_index_.reserve(n);
  index->texts_.reserve(n);
  index->tokens_.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const ComponentRecord& c = index->components_[pos];
    if (!index->position_by_id_.emplace(c.component_id, pos).second) {
      throw LoadError("duplicate component_id '" + c.component_id + "'");
    }
    const std::size_t app = index->app_by_id_.at(c.app_id);
    index->app_index_.push_back(app);
    index->texts_.push_back(normalize_text(c.text));
    index->tokens_.push_back(token_set(index->texts_.back()));

    index->by_class_[static_cast<std::size_t>(c.cls)].push_back(pos);
    index->by_color_[static_cast<std::size_t>(c.color.primary())].push_back(pos);
    index->by_category_.by_key[index->apps_[app].category].push_back(pos);
    index->by_company_.by_key[index->company_of_app_[app]].push_back(pos);
    index->by_width_.emplace_back(c.box.w, pos);
    index->by_height_.emplace_back(c.box.h, pos);
  }
  std::sort(index->by_width_.begin(), index->by_width_.end());
  std::sort(index->by_height_.begin(), index->by_height_.end());
  return index;
}

const ComponentRecord* Index::find(std::string_view component_id) const {
  const auto it = position_by_id_.find(std::string(component_id));
  return it == position_by_id_.end() ? nullptr : &components_[it->second];
}

const AppRecord& Index::app_of(const ComponentRecord& component) const {
  return apps_[app_by_id_.at(component.app_id)];
}

const AppRecord* Index::find_app(std::string_view app_id) const {
  const auto it = app_by_id_.find(std::string(app_id));
  return it == app_by_id_.end() ? nullptr : &apps_[it->second];
}

std::vector<std::size_t> Index::match(const QuerySpec& q) const {
  q.validate();
  const std::optional<std::string> company =
      q.developer ? std::optional<std::string>(company_key(*q.developer)) : std::nullopt;
  const std::optional<std::string> needle =
      q.text ? std::optional<std::string>(normalize_text(*q.text)) : std::nullopt;

  // Seed the candidate set from the most selective facet.
  std::span<const std::size_t> seed;
  bool have_seed = false;
  auto offer = [&](std::span<const std::size_t> list) {
    if (!have_seed || list.size() < seed.size()) seed = list;
    have_seed = true;
  };
  if (q.cls) offer(by_class_[static_cast<std::size_t>(*q.cls)]);
  if (q.color) offer(by_color_[static_cast<std::size_t>(*q.color)]);
  if (q.category) offer(by_category_.find(*q.category));
  if (company) offer(by_company_.find(*company));

  std::vector<std::size_t> candidates;
  const auto widths = dimension_range(by_width_, q.min_w, q.max_w);
  const auto heights = dimension_range(by_height_, q.min_h, q.max_h);
  const auto width_count = static_cast<std::size_t>(widths.second - widths.first);
  const auto height_count = static_cast<std::size_t>(heights.second - heights.first);
  const bool width_facet = q.min_w || q.max_w;
  const bool height_facet = q.min_h || q.max_h;

  if (width_facet && (!have_seed || width_count < seed.size()) &&
      (!height_facet || width_count <= height_count)) {
    for (auto it = widths.first; it != widths.second; ++it) candidates.push_back(it->second);
    std::sort(candidates.begin(), candidates.end());
  } else if (height_facet && (!have_seed || height_count < seed.size())) {
    for (auto it = heights.first; it != heights.second; ++it) candidates.push_back(it->second);
    std::sort(candidates.begin(), candidates.end());
  } else if (have_seed) {
    candidates.assign(seed.begin(), seed.end());
  } else {
    candidates.resize(components_.size());
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  }

  std::erase_if(candidates, [&](std::size_t pos) {
    const ComponentRecord& c = components_[pos];
    const std::size_t app = app_index_[pos];
    if (q.cls && c.cls != *q.cls) return true;
    if (q.color && c.color.primary() != *q.color) return true;
    if (q.category && apps_[app].category != *q.category) return true;
    if (company && company_of_app_[app] != *company) return true;
    if (q.min_w && c.box.w < *q.min_w) return true;
    if (q.max_w && c.box.w > *q.max_w) return true;
    if (q.min_h && c.box.h < *q.min_h) return true;
    if (q.max_h && c.box.h > *q.max_h) return true;
    if (needle && texts_[pos].find(*needle) == std::string::npos) return true;
    return false;
  });
  return candidates;
}

ResultPage Index::query(const QuerySpec& q) const {
  const std::vector<std::size_t> positions = match(q);
  ResultPage page;
  page.total = positions.size();
  page.offset = q.offset;
  page.limit = q.limit;
  const std::size_t begin = std::min(q.offset, positions.size());
  const std::size_t end = std::min(positions.size(), begin + q.limit);
  for (std::size_t i = begin; i < end; ++i) page.items.push_back(&components_[positions[i]]);
  return page;
}

double Index::similarity(const ComponentRecord& a, const ComponentRecord& b,
                         const SimilarityWeights& w) const {
  const std::size_t pa = position_by_id_.at(a.component_id);
  const std::size_t pb = position_by_id_.at(b.component_id);
  const std::size_t app_a = app_index_[pa];
  const std::size_t app_b = app_index_[pb];
  double score = 0.0;
  if (app_a == app_b) score += w.app;
  if (company_of_app_[app_a] == company_of_app_[app_b]) score += w.developer;
  if (a.cls == b.cls) score += w.cls;
  score += w.color * (1.0 - 0.5 * a.color.l1_distance(b.color));
  score += w.text * jaccard(tokens_[pa], tokens_[pb]);
  return score;
}

std::vector<ScoredComponent> Index::similar(std::string_view component_id, std::size_t k,
                                            const SimilarityWeights& weights) const {
  if (k == 0) throw PreconditionError("k must be at least 1");
  weights.validate();
  const ComponentRecord* target = find(component_id);
  if (!target) throw NotFoundError("unknown component '" + std::string(component_id) + "'");

  std::vector<ScoredComponent> scored;
  scored.reserve(components_.size());
  for (const auto& c : components_) {
    if (&c == target) continue;
    scored.push_back({c.component_id, similarity(*target, c, weights)});
  }
  const auto better = [](const ScoredComponent& a, const ScoredComponent& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.component_id < b.component_id;
  };
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    better);
  scored.resize(keep);
  return scored;
}

}  // namespace gallery
