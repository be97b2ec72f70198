#pragma once

// 24-bit RGB rasters and binary PPM (P6) I/O.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsguard {

enum class Channel : std::uint8_t { Red = 0, Green = 1, Blue = 2 };

inline constexpr std::array<Channel, 3> kChannels{Channel::Red, Channel::Green, Channel::Blue};

constexpr std::size_t channel_offset(Channel c) noexcept { return static_cast<std::size_t>(c); }

const char* channel_name(Channel c) noexcept;

/// Row-major raster of R,G,B byte triples. Width and height are at least 1.
class RgbImage {
public:
  RgbImage(std::size_t width, std::size_t height);
  RgbImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }
  std::size_t byte_count() const noexcept { return data_.size(); }

  std::span<const std::uint8_t> bytes() const noexcept { return data_; }
  std::span<std::uint8_t> bytes() noexcept { return data_; }

  std::uint8_t at(std::size_t row, std::size_t col, Channel c) const {
    return data_[(row * width_ + col) * 3 + channel_offset(c)];
  }
  std::uint8_t& at(std::size_t row, std::size_t col, Channel c) {
    return data_[(row * width_ + col) * 3 + channel_offset(c)];
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> data_;
};

enum class RasterErrc { BadMagic, UnsupportedMaxval, Truncated, MalformedHeader, Io };

class RasterError : public std::runtime_error {
public:
  RasterError(RasterErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  RasterErrc code() const noexcept { return code_; }

private:
  RasterErrc code_;
};

/// Parses a binary P6 file. Header comments ('#' to end of line) are skipped;
/// maxval must be 255. Bytes past the raster payload are ignored.
RgbImage load_ppm(std::span<const std::uint8_t> bytes);

/// Canonical form: "P6\n<w> <h>\n255\n" followed by the raw data, no comments.
std::vector<std::uint8_t> save_ppm(const RgbImage& image);

RgbImage read_ppm_file(const std::filesystem::path& path);
void write_ppm_file(const std::filesystem::path& path, const RgbImage& image);

/// The given channel of every pixel, row-major; width*height bytes.
std::vector<std::uint8_t> channel_plane(const RgbImage& image, Channel channel);

}  // namespace rsguard
