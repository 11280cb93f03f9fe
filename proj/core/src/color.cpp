#include "gallery/color.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gallery/error.hpp"
#include "gallery/image.hpp"

namespace gallery {
namespace {

constexpr std::array<std::string_view, kColorNameCount> kNames = {
    "red",  "orange", "yellow", "chartreuse", "green",   "spring_green", "cyan",
    "azure", "blue",  "violet", "magenta",    "rose",    "black",        "white",
    "gray",
};

constexpr std::uint64_t kSampleSeed = 0x5eed'c010'4a11'0001ULL;

}  // namespace

std::string_view to_string(ColorName name) { return kNames[static_cast<std::size_t>(name)]; }

std::optional<ColorName> parse_color_name(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return kAllColorNames[i];
  }
  return std::nullopt;
}

Hsv rgb_to_hsv(double r, double g, double b) {
  const double max = std::max({r, g, b});
  const double min = std::min({r, g, b});
  const double delta = max - min;

  Hsv out;
  out.v = max;
  out.s = max > 0.0 ? delta / max : 0.0;
  if (delta <= 0.0) return out;

  double h = 0.0;
  if (max == r) {
    h = 60.0 * ((g - b) / delta);
  } else if (max == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

Hsv rgb_to_hsv(Rgb rgb) {
  return rgb_to_hsv(rgb.r / 255.0, rgb.g / 255.0, rgb.b / 255.0);
}

std::array<double, 3> hsv_to_rgb_unit(Hsv hsv) {
  const double c = hsv.v * hsv.s;
  const double sector = std::fmod(hsv.h, 360.0) / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(sector, 2.0) - 1.0));
  const double m = hsv.v - c;

  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  switch (static_cast<int>(sector)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  return {r + m, g + m, b + m};
}

Rgb hsv_to_rgb(Hsv hsv) {
  const auto unit = hsv_to_rgb_unit(hsv);
  auto quantize = [](double channel) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(channel * 255.0), 0L, 255L));
  };
  return {quantize(unit[0]), quantize(unit[1]), quantize(unit[2])};
}

ColorName color_name(Hsv hsv, const ColorThresholds& t) {
  if (hsv.v < t.black_v) return ColorName::kBlack;
  if (hsv.s < t.achromatic_s) return hsv.v > t.white_v ? ColorName::kWhite : ColorName::kGray;
  const auto bucket = static_cast<std::size_t>(std::lround(hsv.h / 30.0)) % 12;
  return kAllColorNames[bucket];
}

ColorProfile ColorProfile::from_counts(const std::array<std::size_t, kColorNameCount>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw PreconditionError("color profile of zero pixels");

  ColorProfile profile;
  std::size_t best = 0;
  for (std::size_t i = 0; i < kColorNameCount; ++i) {
    profile.fractions_[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    if (counts[i] > counts[best]) best = i;
  }
  profile.primary_ = kAllColorNames[best];
  return profile;
}

ColorProfile ColorProfile::from_fractions(const std::array<double, kColorNameCount>& fractions) {
  ColorProfile profile;
  profile.fractions_ = fractions;
  std::size_t best = 0;
  for (std::size_t i = 0; i < kColorNameCount; ++i) {
    if (fractions[i] > fractions[best]) best = i;
  }
  profile.primary_ = kAllColorNames[best];
  return profile;
}

double ColorProfile::l1_distance(const ColorProfile& other) const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < kColorNameCount; ++i) {
    sum += std::fabs(fractions_[i] - other.fractions_[i]);
  }
  return sum;
}

ColorProfile dominant_color(const ImageView& region, const ColorThresholds& thresholds) {
  if (region.empty()) throw PreconditionError("dominant color of an empty region");

  std::array<std::size_t, kColorNameCount> counts{};
  auto tally = [&](const Rgb& pixel) {
    ++counts[static_cast<std::size_t>(color_name(rgb_to_hsv(pixel), thresholds))];
  };

  const std::size_t n = region.size();
  const auto width = static_cast<std::size_t>(region.width());
  if (n <= kDominantColorSampleLimit) {
    for (int y = 0; y < region.height(); ++y) {
      for (int x = 0; x < region.width(); ++x) tally(region.at(x, y));
    }
  } else {
    std::mt19937_64 rng(kSampleSeed);
    for (std::size_t i = 0; i < kDominantColorSampleLimit; ++i) {
      const std::size_t k = rng() % n;
      tally(region.at(static_cast<int>(k % width), static_cast<int>(k / width)));
    }
  }
  return ColorProfile::from_counts(counts);
}

}  // namespace gallery
