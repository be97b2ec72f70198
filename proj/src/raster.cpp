#include "rsguard/raster.hpp"

#include <fstream>
#include <iterator>
#include <limits>

namespace rsguard {

const char* channel_name(Channel c) noexcept {
  switch (c) {
    case Channel::Red: return "red";
    case Channel::Green: return "green";
    case Channel::Blue: return "blue";
  }
  return "?";
}

RgbImage::RgbImage(std::size_t width, std::size_t height)
    : RgbImage(width, height, std::vector<std::uint8_t>(width * height * 3, 0)) {}

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width_ == 0 || height_ == 0)
    throw std::invalid_argument("RgbImage: width and height must be >= 1");
  if (width_ > std::numeric_limits<std::size_t>::max() / 3 / height_ ||
      data_.size() != width_ * height_ * 3)
    throw std::invalid_argument("RgbImage: data length must equal 3*width*height");
}

namespace {

bool is_space(std::uint8_t b) {
  return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\v' || b == '\f';
}

class HeaderReader {
public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and comments, then reads an unsigned decimal token.
  std::size_t next_number(const char* field) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size())
      throw RasterError(RasterErrc::Truncated, std::string("PPM header ends before ") + field);
    if (bytes_[pos_] < '0' || bytes_[pos_] > '9')
      throw RasterError(RasterErrc::MalformedHeader, std::string("PPM header: expected ") + field);
    std::size_t value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      if (value > (std::size_t{1} << 32))
        throw RasterError(RasterErrc::MalformedHeader, std::string("PPM header: ") + field + " too large");
      value = value * 10 + (bytes_[pos_] - '0');
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size())
      throw RasterError(RasterErrc::Truncated, "PPM header ends before raster");
    if (!is_space(bytes_[pos_]))
      throw RasterError(RasterErrc::MalformedHeader, "PPM header: expected whitespace after maxval");
    ++pos_;
  }

  std::size_t position() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

RgbImage load_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6')
    throw RasterError(RasterErrc::BadMagic, "not a binary PPM (missing P6 magic)");

  HeaderReader reader(bytes);
  reader.advance(2);
  if (bytes.size() > 2 && !is_space(bytes[2]) && bytes[2] != '#')
    throw RasterError(RasterErrc::BadMagic, "not a binary PPM (missing P6 magic)");

  const std::size_t width = reader.next_number("width");
  const std::size_t height = reader.next_number("height");
  const std::size_t maxval = reader.next_number("maxval");
  if (width == 0 || height == 0)
    throw RasterError(RasterErrc::MalformedHeader, "PPM header: zero image dimension");
  if (maxval != 255)
    throw RasterError(RasterErrc::UnsupportedMaxval,
                      "PPM maxval " + std::to_string(maxval) + " unsupported (need 255)");
  if (width > std::numeric_limits<std::size_t>::max() / 3 / height)
    throw RasterError(RasterErrc::MalformedHeader, "PPM header: image dimensions overflow");
  reader.single_space();

  const std::size_t payload = width * height * 3;
  const std::size_t start = reader.position();
  if (bytes.size() - start < payload)
    throw RasterError(RasterErrc::Truncated, "PPM raster truncated: expected " + std::to_string(payload) +
                                                 " bytes, found " + std::to_string(bytes.size() - start));
  auto first = bytes.begin() + static_cast<std::ptrdiff_t>(start);
  return RgbImage(width, height, std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(payload)));
}

std::vector<std::uint8_t> save_ppm(const RgbImage& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + image.byte_count());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), image.bytes().begin(), image.bytes().end());
  return out;
}

RgbImage read_ppm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RasterError(RasterErrc::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_ppm(bytes);
}

void write_ppm_file(const std::filesystem::path& path, const RgbImage& image) {
  const auto bytes = save_ppm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RasterError(RasterErrc::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw RasterError(RasterErrc::Io, "write failed for " + path.string());
}

std::vector<std::uint8_t> channel_plane(const RgbImage& image, Channel channel) {
  std::vector<std::uint8_t> plane;
  plane.reserve(image.pixel_count());
  const auto data = image.bytes();
  for (std::size_t i = channel_offset(channel); i < data.size(); i += 3) plane.push_back(data[i]);
  return plane;
}

}  // namespace rsguard
