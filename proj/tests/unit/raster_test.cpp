#include <gtest/gtest.h>

#include "rsguard/raster.hpp"
#include "test_support.hpp"

using namespace rsguard;
using rsguard::testing::bytes_of;

namespace {

std::vector<std::uint8_t> with_payload(std::string header, std::vector<std::uint8_t> payload) {
  auto out = bytes_of(header);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

RasterErrc load_error(const std::vector<std::uint8_t>& bytes) {
  try {
    load_ppm(bytes);
  } catch (const RasterError& e) {
    return e.code();
  }
  ADD_FAILURE() << "load_ppm did not throw";
  return RasterErrc::Io;
}

}  // namespace

TEST(Raster, LoadsSingleRedPixel) {
  const auto img = load_ppm(with_payload("P6\n1 1\n255\n", {0xFF, 0x00, 0x00}));
  EXPECT_EQ(img.width(), 1u);
  EXPECT_EQ(img.height(), 1u);
  EXPECT_EQ(img.at(0, 0, Channel::Red), 255);
  EXPECT_EQ(img.at(0, 0, Channel::Green), 0);
  EXPECT_EQ(img.at(0, 0, Channel::Blue), 0);
}

TEST(Raster, CommentsInHeaderAreSkipped) {
  const std::vector<std::uint8_t> payload{1, 2, 3, 4, 5, 6};
  const auto plain = load_ppm(with_payload("P6\n2 1\n255\n", payload));
  const auto commented = load_ppm(with_payload("P6\n# made by hand\n2 # width\n1\n#x\n255\n", payload));
  EXPECT_EQ(plain, commented);
}

TEST(Raster, SaveIsCanonical) {
  const RgbImage black(1, 1);
  EXPECT_EQ(save_ppm(black), with_payload("P6\n1 1\n255\n", {0, 0, 0}));

  const RgbImage two(2, 1, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(save_ppm(two), with_payload("P6\n2 1\n255\n", {1, 2, 3, 4, 5, 6}));
}

TEST(Raster, CanonicalFileRoundTripsByteExact) {
  const auto canonical = with_payload("P6\n2 1\n255\n", {9, 8, 7, 6, 5, 4});
  EXPECT_EQ(save_ppm(load_ppm(canonical)), canonical);
}

TEST(Raster, RandomImagesRoundTrip) {
  Rng rng{11};
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = 1 + rng.below(17);
    const auto h = 1 + rng.below(17);
    const auto img = rsguard::testing::random_image(rng, w, h);
    const auto bytes = save_ppm(img);
    const std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    ASSERT_EQ(bytes.size(), header.size() + 3 * w * h);
    ASSERT_EQ(load_ppm(bytes), img);
  }
}

TEST(Raster, ErrorCases) {
  EXPECT_EQ(load_error(bytes_of("P3\n1 1\n255\n000")), RasterErrc::BadMagic);
  EXPECT_EQ(load_error(bytes_of("")), RasterErrc::BadMagic);
  EXPECT_EQ(load_error(bytes_of("P66\n1 1\n255\n000")), RasterErrc::BadMagic);
  EXPECT_EQ(load_error(bytes_of("P6\n1 1\n65535\n000000")), RasterErrc::UnsupportedMaxval);
  EXPECT_EQ(load_error(bytes_of("P6\n1 1\n15\n000")), RasterErrc::UnsupportedMaxval);
  EXPECT_EQ(load_error(bytes_of("P6\n2 2\n255\n0123456789")), RasterErrc::Truncated);
  EXPECT_EQ(load_error(bytes_of("P6\n2 2\n")), RasterErrc::Truncated);
  EXPECT_EQ(load_error(bytes_of("P6\nx 2\n255\n")), RasterErrc::MalformedHeader);
  EXPECT_EQ(load_error(bytes_of("P6\n0 2\n255\n")), RasterErrc::MalformedHeader);
  EXPECT_EQ(load_error(bytes_of("P6\n1 1\n255X000")), RasterErrc::MalformedHeader);
}

TEST(Raster, TrailingBytesAfterRasterAreIgnored) {
  const auto img = load_ppm(with_payload("P6\n1 1\n255\n", {1, 2, 3, 99, 98}));
  EXPECT_EQ(img, RgbImage(1, 1, {1, 2, 3}));
}

TEST(Raster, ChannelPlanes) {
  const RgbImage img(1, 2, {10, 20, 30, 40, 50, 60});
  EXPECT_EQ(channel_plane(img, Channel::Red), (std::vector<std::uint8_t>{10, 40}));
  EXPECT_EQ(channel_plane(img, Channel::Green), (std::vector<std::uint8_t>{20, 50}));
  EXPECT_EQ(channel_plane(img, Channel::Blue), (std::vector<std::uint8_t>{30, 60}));
}

TEST(Raster, PlanesReinterleaveToData) {
  Rng rng{5};
  const auto img = rsguard::testing::random_image(rng, 7, 5);
  const auto r = channel_plane(img, Channel::Red);
  const auto g = channel_plane(img, Channel::Green);
  const auto b = channel_plane(img, Channel::Blue);
  ASSERT_EQ(r.size(), img.pixel_count());
  std::vector<std::uint8_t> rebuilt;
  for (std::size_t i = 0; i < r.size(); ++i) rebuilt.insert(rebuilt.end(), {r[i], g[i], b[i]});
  EXPECT_TRUE(std::equal(rebuilt.begin(), rebuilt.end(), img.bytes().begin(), img.bytes().end()));
}

TEST(Raster, RejectsInconsistentData) {
  EXPECT_THROW(RgbImage(2, 2, std::vector<std::uint8_t>(11)), std::invalid_argument);
  EXPECT_THROW(RgbImage(0, 2), std::invalid_argument);
}

TEST(Raster, BundledFixturesLoad) {
  for (const char* name : {"astronaut", "chelsea", "coffee", "motorcycle", "rocket", "ihc"}) {
    const auto img = read_ppm_file(rsguard::testing::fixture(name));
    EXPECT_EQ(img.width(), 256u) << name;
    EXPECT_EQ(img.height(), 256u) << name;
  }
  EXPECT_THROW(read_ppm_file("/nonexistent/file.ppm"), RasterError);
}
