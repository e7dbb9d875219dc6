#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace covcompose {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Zero-based pixel coordinate (row, column).
struct Pixel {
  int row = 0;
  int col = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Half-open pixel rectangle [row0, row1) x [col0, col1).
struct PixelRect {
  int row0 = 0;
  int col0 = 0;
  int row1 = 0;
  int col1 = 0;

  [[nodiscard]] bool empty() const noexcept { return row1 <= row0 || col1 <= col0; }
};

/// Row-major m x n grid of 8-bit RGB triples.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int rows, int cols, Rgb fill = {});

  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return pixels_.size(); }

  [[nodiscard]] Rgb& at(int row, int col) { return pixels_[index(row, col)]; }
  [[nodiscard]] const Rgb& at(int row, int col) const { return pixels_[index(row, col)]; }
  [[nodiscard]] Rgb& operator[](std::size_t flat) { return pixels_[flat]; }
  [[nodiscard]] const Rgb& operator[](std::size_t flat) const { return pixels_[flat]; }

  [[nodiscard]] std::span<const Rgb> pixels() const noexcept { return pixels_; }
  [[nodiscard]] std::span<Rgb> pixels() noexcept { return pixels_; }

  [[nodiscard]] bool same_shape(const RgbImage& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  [[nodiscard]] std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rgb> pixels_;
};

/// Row-major m x n grid of doubles.
class RealGrid {
 public:
  RealGrid() = default;
  RealGrid(int rows, int cols, double fill = 0.0)
      : rows_(rows),
        cols_(cols),
        values_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }

  [[nodiscard]] double& at(int row, int col) {
    return values_[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
                   static_cast<std::size_t>(col)];
  }
  [[nodiscard]] double at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
                   static_cast<std::size_t>(col)];
  }

  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

/// Three real-valued colour planes, used where an image must be held in real form.
struct RealColorImage {
  std::array<RealGrid, 3> channels;

  [[nodiscard]] int rows() const noexcept { return channels[0].rows(); }
  [[nodiscard]] int cols() const noexcept { return channels[0].cols(); }

  static RealColorImage from(const RgbImage& img);
};

}  // namespace covcompose
