#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace gallery {

class ImageView;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

// Hue in degrees [0, 360); saturation and value in [0, 1].
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

// Twelve 30-degree hue buckets centred on 0, 30, ..., 330, then the three
// achromatic buckets. The enumerator order is the canonical tie-break order.
enum class ColorName : std::uint8_t {
  kRed,
  kOrange,
  kYellow,
  kChartreuse,
  kGreen,
  kSpringGreen,
  kCyan,
  kAzure,
  kBlue,
  kViolet,
  kMagenta,
  kRose,
  kBlack,
  kWhite,
  kGray,
};

inline constexpr std::size_t kColorNameCount = 15;

inline constexpr std::array<ColorName, kColorNameCount> kAllColorNames = {
    ColorName::kRed,    ColorName::kOrange,      ColorName::kYellow,
    ColorName::kChartreuse, ColorName::kGreen,   ColorName::kSpringGreen,
    ColorName::kCyan,   ColorName::kAzure,       ColorName::kBlue,
    ColorName::kViolet, ColorName::kMagenta,     ColorName::kRose,
    ColorName::kBlack,  ColorName::kWhite,       ColorName::kGray,
};

std::string_view to_string(ColorName name);
std::optional<ColorName> parse_color_name(std::string_view text);

// Achromatic classification cut-offs, applied before the hue buckets:
// v < black_v is black, s < achromatic_s is white when v > white_v and gray
// otherwise.
struct ColorThresholds {
  double black_v = 0.15;
  double achromatic_s = 0.15;
  double white_v = 0.85;
};

Hsv rgb_to_hsv(Rgb rgb);

// Hexcone conversion on unit-range channels, no quantization.
Hsv rgb_to_hsv(double r, double g, double b);
std::array<double, 3> hsv_to_rgb_unit(Hsv hsv);

// Inverse hexcone conversion rounded to 8 bits per channel.
Rgb hsv_to_rgb(Hsv hsv);

ColorName color_name(Hsv hsv, const ColorThresholds& thresholds = {});

inline ColorName color_name(Rgb rgb, const ColorThresholds& thresholds = {}) {
  return color_name(rgb_to_hsv(rgb), thresholds);
}

// Normalized per-bucket pixel fractions plus the argmax bucket.
class ColorProfile {
 public:
  ColorProfile() = default;

  // Builds a profile from raw counts. Requires at least one non-zero count.
  static ColorProfile from_counts(const std::array<std::size_t, kColorNameCount>& counts);

  // Builds a profile from fractions that already sum to 1 (e.g. parsed JSON).
  static ColorProfile from_fractions(const std::array<double, kColorNameCount>& fractions);

  ColorName primary() const noexcept { return primary_; }
  double fraction(ColorName name) const noexcept {
    return fractions_[static_cast<std::size_t>(name)];
  }
  const std::array<double, kColorNameCount>& fractions() const noexcept { return fractions_; }

  // Sum of absolute per-bucket differences, in [0, 2].
  double l1_distance(const ColorProfile& other) const noexcept;

  friend bool operator==(const ColorProfile&, const ColorProfile&) = default;

 private:
  ColorName primary_ = ColorName::kBlack;
  std::array<double, kColorNameCount> fractions_{};
};

// Regions above this many pixels are subsampled (fixed seed) before tallying.
inline constexpr std::size_t kDominantColorSampleLimit = std::size_t{1} << 16;

// Per-pixel color_name tally over a non-empty region.
ColorProfile dominant_color(const ImageView& region, const ColorThresholds& thresholds = {});

}  // namespace gallery
