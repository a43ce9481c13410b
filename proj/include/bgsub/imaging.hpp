#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgsub {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// Real-valued color triple used by the statistical and mixture models.
using Vec3 = std::array<double, 3>;

inline Vec3 to_vec3(Rgb8 p) {
  return {static_cast<double>(p.r), static_cast<double>(p.g), static_cast<double>(p.b)};
}

/// Ordering doubles as the mask encoding: value * 85 is the PGM byte.
enum class PixelClass : std::uint8_t {
  Background = 0,
  Shadow = 1,
  Highlight = 2,
  Foreground = 3,
};

inline constexpr std::size_t kPixelClassCount = 4;

const char* to_string(PixelClass c);

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major raster with top-left origin.
template <typename T>
class Raster {
 public:
  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Raster(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw ImageError("pixel count does not match dimensions");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  const T& at(int x, int y) const { return data_[index(x, y)]; }
  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T& operator[](std::size_t i) { return data_[i]; }

  std::span<const T> pixels() const { return data_; }
  std::span<T> pixels() { return data_; }

  bool same_shape(int w, int h) const { return w == width_ && h == height_; }
  template <typename U>
  bool same_shape(const Raster<U>& other) const {
    return same_shape(other.width(), other.height());
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static void check_dims(int w, int h) {
    if (w < 1 || h < 1) throw ImageError("raster dimensions must be positive");
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<T> data_;
};

using Frame = Raster<Rgb8>;
using GrayFrame = Raster<std::uint8_t>;
using ClassMask = Raster<PixelClass>;

/// Half-away-from-zero rounding then clamping into the 8-bit range.
std::uint8_t clamp_to_u8(double v);

/// Rec. 601 luma, rounded half away from zero.
std::uint8_t luminance(Rgb8 p);
GrayFrame to_grayscale(const Frame& frame);
std::vector<GrayFrame> to_grayscale(std::span<const Frame> frames);

std::uint8_t encode_class(PixelClass c);
/// Throws ImageError for bytes outside {0, 85, 170, 255}.
PixelClass decode_class(std::uint8_t byte);

// Binary netpbm I/O. Only maxval 255 is accepted on input.
Frame load_ppm(const std::filesystem::path& path);
void save_ppm(const Frame& frame, const std::filesystem::path& path);
GrayFrame load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayFrame& gray, const std::filesystem::path& path);
void save_pgm(const ClassMask& mask, const std::filesystem::path& path);
ClassMask load_mask_pgm(const std::filesystem::path& path);

/// Zero-padded sequence file name, e.g. frame_000001.ppm for index 0.
std::string sequence_file_name(const std::string& prefix, std::size_t index,
                               const std::string& extension);

/// Files in `dir` with the given extension, sorted lexicographically.
std::vector<std::filesystem::path> list_sequence(const std::filesystem::path& dir,
                                                 const std::string& extension);
std::vector<Frame> load_frame_sequence(const std::filesystem::path& dir);
std::vector<ClassMask> load_mask_sequence(const std::filesystem::path& dir);

}  // namespace bgsub
