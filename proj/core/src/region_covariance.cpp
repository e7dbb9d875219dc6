#include "covcompose/region_covariance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

// Neumaier-compensated accumulator for a block of doubles.
class CompensatedSum {
 public:
  explicit CompensatedSum(std::size_t n) : sum_(n, 0.0), comp_(n, 0.0) {}

  void add(std::size_t k, double x) noexcept {
    const double s = sum_[k];
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      comp_[k] += (s - t) + x;
    } else {
      comp_[k] += (x - t) + s;
    }
    sum_[k] = t;
  }

  [[nodiscard]] double value(std::size_t k) const noexcept { return sum_[k] + comp_[k]; }

 private:
  std::vector<double> sum_;
  std::vector<double> comp_;
};

RegionStats accumulate(const FeatureTensor& tensor, PixelRect rect) {
  const std::size_t p = tensor.dim();
  CompensatedSum vec(p);
  CompensatedSum outer(p * p);
  for (int r = rect.row0; r < rect.row1; ++r) {
    for (int c = rect.col0; c < rect.col1; ++c) {
      const auto phi = tensor.at(r, c);
      for (std::size_t a = 0; a < p; ++a) {
        vec.add(a, phi[a]);
        for (std::size_t b = a; b < p; ++b) outer.add(a * p + b, phi[a] * phi[b]);
      }
    }
  }
  RegionStats stats;
  stats.count = static_cast<std::size_t>(rect.row1 - rect.row0) *
                static_cast<std::size_t>(rect.col1 - rect.col0);
  stats.sum.resize(static_cast<Eigen::Index>(p));
  stats.outer.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t a = 0; a < p; ++a) {
    const auto ia = static_cast<Eigen::Index>(a);
    stats.sum(ia) = vec.value(a);
    for (std::size_t b = a; b < p; ++b) {
      const auto ib = static_cast<Eigen::Index>(b);
      stats.outer(ia, ib) = outer.value(a * p + b);
      stats.outer(ib, ia) = stats.outer(ia, ib);
    }
  }
  return stats;
}

PixelRect square_around(Pixel center, int l) {
  return {center.row - l, center.col - l, center.row + l + 1, center.col + l + 1};
}

}  // namespace

RegionGrid::RegionGrid(int rows, int cols, int half_width)
    : rows_(rows), cols_(cols), l_(half_width) {
  if (half_width < 1 || rows < 2 * half_width + 1 || cols < 2 * half_width + 1) {
    throw Error(ErrorCode::ImageTooSmall,
                std::to_string(rows) + "x" + std::to_string(cols) +
                    " image cannot hold a region of half-width " + std::to_string(half_width));
  }
  // floor((m-l)/l) centres, less the last one when l divides m, since its
  // region would end one pixel past the border.
  grid_rows_ = (rows - l_ - 1) / l_;
  grid_cols_ = (cols - l_ - 1) / l_;
  centers_.reserve(static_cast<std::size_t>(grid_rows_ * grid_cols_));
  for (int p = 0; p < grid_rows_; ++p) {
    for (int q = 0; q < grid_cols_; ++q) centers_.push_back({l_ + p * l_, l_ + q * l_});
  }
}

PixelRect RegionGrid::region_rect(std::size_t region) const noexcept {
  return square_around(centers_[region], l_);
}

bool RegionGrid::contains(std::size_t region, Pixel px) const noexcept {
  const Pixel c = centers_[region];
  return std::abs(px.row - c.row) <= l_ && std::abs(px.col - c.col) <= l_;
}

RegionGrid::AxisRange RegionGrid::axis_range(int coord, int count) const noexcept {
  // |coord - l(p+1)| <= l  <=>  ceil(coord/l) - 2 <= p <= floor(coord/l)
  const int hi = std::min(coord / l_, count - 1);
  const int lo = std::max((coord + l_ - 1) / l_ - 2, 0);
  return {lo, hi};
}

RegionGrid build_grid(int rows, int cols, int half_width) {
  return RegionGrid(rows, cols, half_width);
}

std::vector<std::size_t> regions_containing(const RegionGrid& grid, Pixel px) {
  std::vector<std::size_t> out;
  grid.for_each_region_containing(px, [&out](std::size_t k) { out.push_back(k); });
  return out;
}

SymMatrix covariance_from_stats(const RegionStats& stats) {
  const auto n = static_cast<double>(stats.count);
  const Eigen::MatrixXd centred = stats.outer - (stats.sum * stats.sum.transpose()) / n;
  return SymMatrix::symmetrize((centred + centred.transpose()) / (2.0 * (n - 1.0)));
}

SymMatrix region_covariance_raw(const FeatureTensor& tensor, Pixel center, int half_width) {
  const PixelRect rect = square_around(center, half_width);
  if (rect.row0 < 0 || rect.col0 < 0 || rect.row1 > tensor.rows() || rect.col1 > tensor.cols()) {
    throw Error(ErrorCode::ImageTooSmall, "region extends outside the image");
  }
  return covariance_from_stats(accumulate(tensor, rect));
}

SpdMatrix region_covariance(const FeatureTensor& tensor, Pixel center, int half_width) {
  return regularize(region_covariance_raw(tensor, center, half_width));
}

std::vector<RegionStats> init_stats(const FeatureTensor& tensor, const RegionGrid& grid) {
  if (tensor.rows() != grid.rows() || tensor.cols() != grid.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "tensor and grid shapes differ");
  }
  std::vector<RegionStats> stats;
  stats.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) stats.push_back(accumulate(tensor, grid.region_rect(k)));
  return stats;
}

void apply_pixel_delta(std::span<RegionStats> stats, const RegionGrid& grid, Pixel px,
                       std::span<const double> old_value, std::span<const double> new_value,
                       std::vector<char>& dirty) {
  const std::size_t p = old_value.size();
  grid.for_each_region_containing(px, [&](std::size_t k) {
    RegionStats& s = stats[k];
    for (std::size_t a = 0; a < p; ++a) {
      const auto ia = static_cast<Eigen::Index>(a);
      s.sum(ia) += new_value[a] - old_value[a];
      for (std::size_t b = 0; b < p; ++b) {
        const auto ib = static_cast<Eigen::Index>(b);
        s.outer(ia, ib) += new_value[a] * new_value[b] - old_value[a] * old_value[b];
      }
    }
    dirty[k] = 1;
  });
}

std::vector<std::size_t> apply_pixel_deltas(std::span<RegionStats> stats, const RegionGrid& grid,
                                            std::span<const PixelDelta> deltas) {
  std::vector<char> dirty(grid.size(), 0);
  for (const PixelDelta& d : deltas) {
    apply_pixel_delta(stats, grid, d.pixel, d.old_value, d.new_value, dirty);
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dirty.size(); ++k) {
    if (dirty[k] != 0) out.push_back(k);
  }
  return out;
}

}  // namespace covcompose
