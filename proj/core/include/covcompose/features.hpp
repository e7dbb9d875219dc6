#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covcompose/image.hpp"

namespace covcompose {

/// Per-pixel features that can be stacked into a feature mapping.
enum class FeatureId {
  Row,          // i, 1-based vertical coordinate
  Col,          // j, 1-based horizontal coordinate
  Red,
  Green,
  Blue,
  AbsDi,        // |dI/di|
  AbsDj,        // |dI/dj|
  AbsDii,       // |d2I/di2|
  AbsDjj,       // |d2I/dj2|
  AbsDij,       // |d2I/didj|
  EdgeMagnitude,
  EdgeOrientation,
  Hue,
  Saturation,
  Value,
};

std::string_view feature_name(FeatureId id) noexcept;

/// Ordered, duplicate-free list of features (p >= 2).
class FeatureSpec {
 public:
  /// Throws Error(BadValue) on duplicates or fewer than two features.
  explicit FeatureSpec(std::vector<FeatureId> ids);

  /// Feature Set 1: i, j, r, g, b, edge magnitude, edge orientation.
  static FeatureSpec set1();
  /// Feature Set 2: i, j, h, s, v.
  static FeatureSpec set2();
  /// Feature Set 3: h, s, v, edge magnitude, edge orientation.
  static FeatureSpec set3();
  /// "1", "2", "3" or a comma-separated list of feature names.
  static FeatureSpec parse(std::string_view text);

  [[nodiscard]] std::size_t dim() const noexcept { return ids_.size(); }
  [[nodiscard]] std::span<const FeatureId> ids() const noexcept { return ids_; }
  [[nodiscard]] bool needs_derivatives() const noexcept;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;

 private:
  std::vector<FeatureId> ids_;
};

/// m x n grid of length-p feature vectors, pixel-major.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  FeatureTensor(int rows, int cols, std::size_t dim)
      : rows_(rows),
        cols_(cols),
        dim_(dim),
        values_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) * dim, 0.0) {}

  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  [[nodiscard]] std::span<double> at(int row, int col) noexcept {
    return {values_.data() + offset(row, col), dim_};
  }
  [[nodiscard]] std::span<const double> at(int row, int col) const noexcept {
    return {values_.data() + offset(row, col), dim_};
  }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const FeatureTensor&, const FeatureTensor&) = default;

 private:
  [[nodiscard]] std::size_t offset(int row, int col) const noexcept {
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
            static_cast<std::size_t>(col)) *
           dim_;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// Chebyshev radius around a changed pixel whose feature values may change.
inline constexpr int kStencilRadius = 2;

/// I = 0.2989 R + 0.5870 G + 0.1140 B, unrounded.
RealGrid intensity(const RgbImage& img);
RealGrid intensity(const RealColorImage& img);

struct DerivativeGrids {
  RealGrid di;
  RealGrid dj;
  RealGrid dii;
  RealGrid djj;
  RealGrid dij;
};

/// Central-difference derivatives with replicate padding. Requires m, n >= 3.
DerivativeGrids derivatives(const RealGrid& intensity);

struct EdgeGrids {
  RealGrid magnitude;
  RealGrid orientation;  // radians in [0, pi/2]
};

EdgeGrids edge_features(const RealGrid& di, const RealGrid& dj);

/// Hexcone HSV with each component scaled from [0, 1] to [0, 255].
struct HsvGrids {
  RealGrid h;
  RealGrid s;
  RealGrid v;
};

HsvGrids rgb_to_hsv(const RgbImage& img);

/// Stacks the requested features in spec order.
FeatureTensor feature_tensor(const RgbImage& img, const FeatureSpec& spec);

/// Recomputes every feature vector within kStencilRadius of `rect` from `img`.
/// Values elsewhere are left untouched.
void recompute_feature_window(FeatureTensor& tensor, const RgbImage& img,
                              const FeatureSpec& spec, PixelRect rect);

/// Feature vector at a single pixel; equal to the corresponding feature_tensor entry.
void pixel_features(const RgbImage& img, const FeatureSpec& spec, int row, int col,
                    std::span<double> out);

}  // namespace covcompose
