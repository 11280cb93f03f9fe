#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "gallery/error.hpp"
#include "gallery/image.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

namespace gallery {
namespace {

Image noise(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image image(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      image.at(x, y) = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                        static_cast<std::uint8_t>(rng())};
    }
  }
  return image;
}

TEST(Image, PngAndPpmRoundTrip) {
  testing::TempDir dir;
  const Image image = noise(37, 23, 1);
  save_image(image, dir / "a.png");
  EXPECT_EQ(load_image(dir / "a.png"), image);
  save_image(image, dir / "a.ppm");
  EXPECT_EQ(load_image(dir / "a.ppm"), image);
}

TEST(Image, RejectsUnknownFormatsAndMissingFiles) {
  testing::TempDir dir;
  EXPECT_THROW(save_image(Image(2, 2), dir / "a.bmp"), Error);
  EXPECT_THROW(load_image(dir / "missing.png"), Error);
  std::ofstream(dir / "junk.png") << "not a png";
  EXPECT_THROW(load_image(dir / "junk.png"), Error);
}

TEST(Image, CropAndViewAgree) {
  const Image image = noise(20, 10, 2);
  const BoundingBox box{3, 2, 5, 4};
  const Image c = crop(image, box);
  ASSERT_EQ(c.width(), 5);
  ASSERT_EQ(c.height(), 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 5; ++x) EXPECT_EQ(c.at(x, y), image.at(x + 3, y + 2));
  }
  EXPECT_EQ(ImageView(image, box).to_image(), c);
  EXPECT_THROW(crop(image, {18, 0, 5, 5}), PreconditionError);
}

TEST(ScaleNearest, IdentityAndDoubling) {
  const Image image = noise(7, 5, 3);
  EXPECT_EQ(scale_nearest(image, 1.0), image);
  const Image big = scale_nearest(image, 2.0);
  ASSERT_EQ(big.width(), 14);
  ASSERT_EQ(big.height(), 10);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 14; ++x) EXPECT_EQ(big.at(x, y), image.at(x / 2, y / 2));
  }
}

TEST(ScaleNearest, SizesFollowEdgeRounding) {
  EXPECT_EQ(scaled_edge(10, 0.5), 5);
  EXPECT_EQ(scaled_edge(3, 0.5), 2);
  EXPECT_EQ(scaled_edge(0, 0.37), 0);
  const Image image = noise(33, 17, 4);
  const Image s = scale_nearest(image, 0.37);
  EXPECT_EQ(s.width(), scaled_edge(33, 0.37));
  EXPECT_EQ(s.height(), scaled_edge(17, 0.37));
}

TEST(ScaleNearest, AnyBoxLandsOnItsEdges) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> scale(0.3, 1.7);
  for (int trial = 0; trial < 50; ++trial) {
    const Image image = noise(40, 30, rng());
    const double s = scale(rng);
    const Image scaled = scale_nearest(image, s);
    const int x = static_cast<int>(rng() % 39), y = static_cast<int>(rng() % 29);
    const BoundingBox box{x, y, 1 + static_cast<int>(rng() % (40 - x)),
                          1 + static_cast<int>(rng() % (30 - y))};
    const BoundingBox placed{scaled_edge(box.x, s), scaled_edge(box.y, s),
                             scaled_edge(box.right(), s) - scaled_edge(box.x, s),
                             scaled_edge(box.bottom(), s) - scaled_edge(box.y, s)};
    EXPECT_TRUE(testing::crop_consistent(image, box, scaled, placed, s, 0, 0));
  }
}

TEST(Blit, CopiesIntoTarget) {
  const Image src = noise(3, 2, 5);
  Image dst(10, 10, Rgb{1, 2, 3});
  blit(src, dst, 4, 6);
  EXPECT_EQ(dst.at(4, 6), src.at(0, 0));
  EXPECT_EQ(dst.at(6, 7), src.at(2, 1));
  EXPECT_EQ(dst.at(3, 6), (Rgb{1, 2, 3}));
  EXPECT_THROW(blit(src, dst, 8, 0), PreconditionError);
}

}  // namespace
}  // namespace gallery
