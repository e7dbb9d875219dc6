#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "covcompose/features.hpp"
#include "covcompose/image.hpp"
#include "covcompose/spd.hpp"

namespace covcompose {

/// Half-overlapping grid of (2l+1) x (2l+1) square regions.
///
/// Centres sit at zero-based rows l + p*l for p = 0 .. floor((m-l-1)/l) - 1 and
/// likewise for columns, i.e. at 1-based (l+1) + p*l. This is floor((m-l)/l)
/// centres except when l divides m, where that count would put the last region
/// one pixel past the border. Every region lies fully inside the image; bottom
/// and right margins of up to 2l-1 pixels may be left uncovered.
class RegionGrid {
 public:
  /// Throws Error(ImageTooSmall) unless l >= 1, m >= 2l+1 and n >= 2l+1.
  RegionGrid(int rows, int cols, int half_width);

  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  [[nodiscard]] int half_width() const noexcept { return l_; }
  [[nodiscard]] int grid_rows() const noexcept { return grid_rows_; }
  [[nodiscard]] int grid_cols() const noexcept { return grid_cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return centers_.size(); }
  /// Zero-based region centres, row-major over the grid.
  [[nodiscard]] std::span<const Pixel> centers() const noexcept { return centers_; }
  [[nodiscard]] std::size_t region_pixel_count() const noexcept {
    const auto side = static_cast<std::size_t>(2 * l_ + 1);
    return side * side;
  }
  [[nodiscard]] PixelRect region_rect(std::size_t region) const noexcept;
  [[nodiscard]] bool contains(std::size_t region, Pixel px) const noexcept;

  /// Calls fn(region_index) for each region containing `px`, in ascending order.
  template <class Fn>
  void for_each_region_containing(Pixel px, Fn&& fn) const {
    const auto [p0, p1] = axis_range(px.row, grid_rows_);
    const auto [q0, q1] = axis_range(px.col, grid_cols_);
    for (int p = p0; p <= p1; ++p) {
      for (int q = q0; q <= q1; ++q) fn(static_cast<std::size_t>(p * grid_cols_ + q));
    }
  }

 private:
  struct AxisRange {
    int first;
    int last;
  };
  [[nodiscard]] AxisRange axis_range(int coord, int count) const noexcept;

  int rows_;
  int cols_;
  int l_;
  int grid_rows_ = 0;
  int grid_cols_ = 0;
  std::vector<Pixel> centers_;
};

RegionGrid build_grid(int rows, int cols, int half_width);

/// Region indices containing `px`, computed from the grid arithmetic.
std::vector<std::size_t> regions_containing(const RegionGrid& grid, Pixel px);

/// Running sums over one region: count, sum of phi, sum of phi phi^T.
struct RegionStats {
  std::size_t count = 0;
  Eigen::VectorXd sum;
  Eigen::MatrixXd outer;
};

/// (sum phi phi^T - count mu mu^T) / (count - 1), symmetrised, unregularized.
SymMatrix covariance_from_stats(const RegionStats& stats);

/// Unregularized covariance of the region centred at `center` computed
/// directly from the tensor.
SymMatrix region_covariance_raw(const FeatureTensor& tensor, Pixel center, int half_width);

/// Regularized region covariance descriptor.
SpdMatrix region_covariance(const FeatureTensor& tensor, Pixel center, int half_width);

/// Sums for every grid region, accumulated with compensated summation.
std::vector<RegionStats> init_stats(const FeatureTensor& tensor, const RegionGrid& grid);

struct PixelDelta {
  Pixel pixel;
  std::vector<double> old_value;
  std::vector<double> new_value;
};

/// Replaces one pixel's contribution in every region containing it and marks
/// those regions in `dirty` (sized grid.size()).
void apply_pixel_delta(std::span<RegionStats> stats, const RegionGrid& grid, Pixel px,
                       std::span<const double> old_value, std::span<const double> new_value,
                       std::vector<char>& dirty);

/// Applies all deltas; returns the sorted indices of regions that changed.
std::vector<std::size_t> apply_pixel_deltas(std::span<RegionStats> stats, const RegionGrid& grid,
                                            std::span<const PixelDelta> deltas);

}  // namespace covcompose
