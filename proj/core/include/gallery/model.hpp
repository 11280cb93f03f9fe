#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gallery/color.hpp"

namespace gallery {

// The eleven gallery component types, in canonical order.
enum class ComponentClass : std::uint8_t {
  kButton,
  kImageButton,
  kCheckBox,
  kRadioButton,
  kSwitch,
  kToggleButton,
  kProgressBar,
  kRatingBar,
  kSeekBar,
  kSpinner,
  kChronometer,
};

inline constexpr std::size_t kComponentClassCount = 11;

inline constexpr std::array<ComponentClass, kComponentClassCount> kAllComponentClasses = {
    ComponentClass::kButton,      ComponentClass::kImageButton,  ComponentClass::kCheckBox,
    ComponentClass::kRadioButton, ComponentClass::kSwitch,       ComponentClass::kToggleButton,
    ComponentClass::kProgressBar, ComponentClass::kRatingBar,    ComponentClass::kSeekBar,
    ComponentClass::kSpinner,     ComponentClass::kChronometer,
};

std::string_view to_string(ComponentClass cls);
std::optional<ComponentClass> parse_component_class(std::string_view text);

// Pixel rectangle [x, x+w) x [y, y+h).
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const noexcept { return x + w; }
  int bottom() const noexcept { return y + h; }
  std::int64_t area() const noexcept { return std::int64_t{w} * h; }
  bool valid() const noexcept { return x >= 0 && y >= 0 && w > 0 && h > 0; }
  bool fits_within(int width, int height) const noexcept {
    return valid() && right() <= width && bottom() <= height;
  }

  friend constexpr bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct AppRecord {
  std::string app_id;
  std::string name;
  std::string category;
  std::string developer;
  std::int64_t downloads = 0;
  double rating = 0.0;

  friend bool operator==(const AppRecord&, const AppRecord&) = default;
};

enum class ScreenshotKind : std::uint8_t { kAnnotatedRuntime, kAppIntroduction };

std::string_view to_string(ScreenshotKind kind);

struct Annotation {
  ComponentClass cls = ComponentClass::kButton;
  BoundingBox box;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct ScreenshotRecord {
  std::string screenshot_id;
  std::string app_id;
  ScreenshotKind kind = ScreenshotKind::kAnnotatedRuntime;
  std::string image;  // path relative to the corpus or store directory
  int width = 0;
  int height = 0;
  // Present iff kind == kAnnotatedRuntime.
  std::optional<std::vector<Annotation>> components;

  friend bool operator==(const ScreenshotRecord&, const ScreenshotRecord&) = default;
};

enum class ComponentSource : std::uint8_t { kMetadata, kDetector };

std::string_view to_string(ComponentSource source);

struct ComponentRecord {
  std::string component_id;
  std::string screenshot_id;
  std::string app_id;
  ComponentClass cls = ComponentClass::kButton;
  BoundingBox box;
  ColorProfile color;
  std::string text;  // normalized
  ComponentSource source = ComponentSource::kMetadata;
  double confidence = 1.0;

  friend bool operator==(const ComponentRecord&, const ComponentRecord&) = default;
};

struct Violation {
  std::string message;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

// Every referential-integrity problem in the corpus, sorted and deduplicated
// so the result does not depend on input order.
std::vector<Violation> validate_corpus(std::span<const AppRecord> apps,
                                       std::span<const ScreenshotRecord> screenshots);

// Company identity: developer string after trim and Unicode case-fold.
std::string company_key(std::string_view developer);

}  // namespace gallery
