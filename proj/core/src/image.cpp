#include "gallery/image.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <png.h>

#include "gallery/error.hpp"

namespace gallery {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

Image load_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw IoError("cannot read PNG " + path.string() + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGB;
  Image image(static_cast<int>(png.width), static_cast<int>(png.height));
  static_assert(sizeof(Rgb) == 3);
  Rgb* buffer = image.data();
  if (!png_image_finish_read(&png, nullptr, buffer, 0, nullptr)) {
    png_image_free(&png);
    throw IoError("cannot decode PNG " + path.string() + ": " + png.message);
  }
  return image;
}

void save_png(const Image& image, const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.pixels().data(), 0, nullptr)) {
    throw IoError("cannot write PNG " + path.string() + ": " + png.message);
  }
}

// Binary PPM ("P6", maxval 255).
Image load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto next_token = [&]() {
    std::string token;
    while (in) {
      const int c = in.get();
      if (c == '#') {
        std::string comment;
        std::getline(in, comment);
      } else if (std::isspace(c)) {
        if (!token.empty()) break;
      } else if (c != EOF) {
        token.push_back(static_cast<char>(c));
      }
    }
    return token;
  };
  if (next_token() != "P6") throw IoError(path.string() + " is not a binary PPM");
  const int width = std::stoi(next_token());
  const int height = std::stoi(next_token());
  if (std::stoi(next_token()) != 255) throw IoError(path.string() + ": unsupported maxval");
  if (width <= 0 || height <= 0) throw IoError(path.string() + ": bad dimensions");
  Image image(width, height);
  auto* buffer = reinterpret_cast<char*>(image.data());
  in.read(buffer, static_cast<std::streamsize>(image.pixels().size() * 3));
  if (!in) throw IoError(path.string() + ": truncated pixel data");
  return image;
}

void save_ppm(const Image& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels().data()),
            static_cast<std::streamsize>(image.pixels().size() * 3));
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

Image::Image(int width, int height, Rgb fill)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
  if (width <= 0 || height <= 0) throw PreconditionError("image dimensions must be positive");
}

void Image::fill_rect(const BoundingBox& box, Rgb color) {
  if (!box.fits_within(width_, height_)) throw PreconditionError("fill_rect outside image");
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x; x < box.right(); ++x) at(x, y) = color;
  }
}

ImageView::ImageView(const Image& image)
    : image_(&image), box_{0, 0, image.width(), image.height()} {}

ImageView::ImageView(const Image& image, const BoundingBox& box) : image_(&image), box_(box) {
  if (!box.fits_within(image.width(), image.height())) {
    throw PreconditionError("region outside image bounds");
  }
}

Image ImageView::to_image() const {
  Image out(box_.w, box_.h);
  for (int y = 0; y < box_.h; ++y) {
    for (int x = 0; x < box_.w; ++x) out.at(x, y) = at(x, y);
  }
  return out;
}

Image crop(const Image& image, const BoundingBox& box) { return ImageView(image, box).to_image(); }

int scaled_edge(int coordinate, double scale) {
  return static_cast<int>(std::floor(coordinate * scale + 0.5));
}

Image scale_nearest(const Image& image, double scale) {
  if (!(scale > 0.0)) throw PreconditionError("scale must be positive");
  const int width = scaled_edge(image.width(), scale);
  const int height = scaled_edge(image.height(), scale);
  if (width <= 0 || height <= 0) throw PreconditionError("scaled image would be empty");

  std::vector<int> source_x(static_cast<std::size_t>(width));
  std::vector<int> source_y(static_cast<std::size_t>(height));
  for (int i = 0; i < image.width(); ++i) {
    for (int t = scaled_edge(i, scale); t < scaled_edge(i + 1, scale); ++t) source_x[t] = i;
  }
  for (int j = 0; j < image.height(); ++j) {
    for (int t = scaled_edge(j, scale); t < scaled_edge(j + 1, scale); ++t) source_y[t] = j;
  }

  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out.at(x, y) = image.at(source_x[x], source_y[y]);
  }
  return out;
}

void blit(const Image& source, Image& target, int offset_x, int offset_y) {
  const BoundingBox placed{offset_x, offset_y, source.width(), source.height()};
  if (!placed.fits_within(target.width(), target.height())) {
    throw PreconditionError("blit outside target image");
  }
  for (int y = 0; y < source.height(); ++y) {
    for (int x = 0; x < source.width(); ++x) target.at(offset_x + x, offset_y + y) = source.at(x, y);
  }
}

Image load_image(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return load_png(path);
  if (ext == ".ppm") return load_ppm(path);
  throw IoError("unsupported image format: " + path.string());
}

void save_image(const Image& image, const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return save_png(image, path);
  if (ext == ".ppm") return save_ppm(image, path);
  throw IoError("unsupported image format: " + path.string());
}

}  // namespace gallery
