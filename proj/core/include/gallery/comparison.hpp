#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gallery/index.hpp"

namespace gallery {

inline constexpr std::size_t kComparisonCellSize = 6;

struct ComparisonTable {
  struct Row {
    ComponentClass cls = ComponentClass::kButton;
    // One per company; nullopt is the "None" cell.
    std::vector<std::optional<std::vector<std::string>>> cells;
  };

  std::vector<std::string> companies;  // company keys, column order
  std::array<Row, kComponentClassCount> rows;
  std::vector<std::map<ColorName, double>> color_dist;  // per company
};

struct CompanyThresholds {
  std::size_t min_apps = 1;
  std::int64_t min_downloads = 0;
};

// Companies with at least min_apps apps and one app reaching min_downloads,
// by total downloads descending (ties by key).
std::vector<std::string> eligible_companies(const Index& index, const CompanyThresholds& t);

// Cells rank a company's components of one class by owning-app downloads,
// then owning-app rating (both descending), then component_id. Throws
// NotFoundError for an unknown company and PreconditionError for an empty list.
ComparisonTable compare(const Index& index, const std::vector<std::string>& companies);

}  // namespace gallery
