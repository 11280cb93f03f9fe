#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "gallery/color.hpp"
#include "gallery/model.hpp"

namespace gallery {

// Owning 8-bit RGB raster, row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }
  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }

  std::span<const Rgb> pixels() const noexcept { return pixels_; }
  Rgb* data() noexcept { return pixels_.data(); }

  void fill_rect(const BoundingBox& box, Rgb color);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

// Non-owning rectangular window onto an Image. The image must outlive it.
class ImageView {
 public:
  explicit ImageView(const Image& image);
  // Throws PreconditionError if the box is not inside the image.
  ImageView(const Image& image, const BoundingBox& box);

  int width() const noexcept { return box_.w; }
  int height() const noexcept { return box_.h; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(box_.w) * static_cast<std::size_t>(box_.h);
  }
  bool empty() const noexcept { return box_.w <= 0 || box_.h <= 0; }

  const Rgb& at(int x, int y) const { return image_->at(box_.x + x, box_.y + y); }

  Image to_image() const;

 private:
  const Image* image_;
  BoundingBox box_;
};

Image crop(const Image& image, const BoundingBox& box);

// Nearest-neighbour resampling that maps source column i onto the target
// span [round(i*s), round((i+1)*s)), same for rows. Every target pixel has
// exactly one source pixel and a source box [x, x+w) lands exactly on
// [round(x*s), round((x+w)*s)).
Image scale_nearest(const Image& image, double scale);

// Target coordinate of source edge `coordinate` under scale_nearest.
int scaled_edge(int coordinate, double scale);

void blit(const Image& source, Image& target, int offset_x, int offset_y);

// PNG (".png") or binary PPM (".ppm"); anything else is rejected.
Image load_image(const std::filesystem::path& path);
void save_image(const Image& image, const std::filesystem::path& path);

}  // namespace gallery
