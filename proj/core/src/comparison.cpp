#include "gallery/comparison.hpp"

#include <algorithm>

#include "gallery/error.hpp"

namespace gallery {

std::vector<std::string> eligible_companies(const Index& index, const CompanyThresholds& t) {
  struct Entry {
    std::string key;
    std::int64_t total = 0;
  };
  std::vector<Entry> entries;
  const auto apps = index.apps();
  for (const auto& [key, app_indexes] : index.companies()) {
    if (app_indexes.size() < t.min_apps) continue;
    std::int64_t total = 0;
    std::int64_t best = 0;
    for (std::size_t i : app_indexes) {
      total += apps[i].downloads;
      best = std::max(best, apps[i].downloads);
    }
    if (best < t.min_downloads) continue;
    entries.push_back({key, total});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.key < b.key;
  });
  std::vector<std::string> out;
  for (auto& e : entries) out.push_back(std::move(e.key));
  return out;
}

ComparisonTable compare(const Index& index, const std::vector<std::string>& companies) {
  if (companies.empty()) throw PreconditionError("compare needs at least one company");

  ComparisonTable table;
  for (const auto& name : companies) {
    std::string key = company_key(name);
    if (!index.companies().contains(key)) throw NotFoundError("unknown company '" + name + "'");
    table.companies.push_back(std::move(key));
  }
  for (std::size_t r = 0; r < kComponentClassCount; ++r) {
    table.rows[r].cls = kAllComponentClasses[r];
    table.rows[r].cells.resize(table.companies.size());
  }
  table.color_dist.resize(table.companies.size());

  const auto components = index.components();
  for (std::size_t col = 0; col < table.companies.size(); ++col) {
    QuerySpec q;
    q.developer = table.companies[col];
    std::vector<std::size_t> owned = index.match(q);

    std::array<std::size_t, kColorNameCount> color_counts{};
    for (std::size_t pos : owned) ++color_counts[static_cast<std::size_t>(components[pos].color.primary())];
    if (!owned.empty()) {
      for (ColorName name : kAllColorNames) {
        const std::size_t n = color_counts[static_cast<std::size_t>(name)];
        if (n > 0) table.color_dist[col][name] = static_cast<double>(n) / static_cast<double>(owned.size());
      }
    }

    std::stable_sort(owned.begin(), owned.end(), [&](std::size_t a, std::size_t b) {
      const ComponentRecord& ca = components[a];
      const ComponentRecord& cb = components[b];
      const AppRecord& aa = index.app_of(ca);
      const AppRecord& ab = index.app_of(cb);
      if (aa.downloads != ab.downloads) return aa.downloads > ab.downloads;
      if (aa.rating != ab.rating) return aa.rating > ab.rating;
      return ca.component_id < cb.component_id;
    });
    for (std::size_t pos : owned) {
      const ComponentRecord& c = components[pos];
      auto& cell = table.rows[static_cast<std::size_t>(c.cls)].cells[col];
      if (!cell) cell.emplace();
      if (cell->size() < kComparisonCellSize) cell->push_back(c.component_id);
    }
  }
  return table;
}

}  // namespace gallery
