#include "covcompose/saliency.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class R2rPlan {
 public:
  R2rPlan(int rows, int cols, double* in, double* out, fftw_r2r_kind kind) {
    const std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_r2r_2d(rows, cols, in, out, kind, kind, FFTW_ESTIMATE);
  }
  ~R2rPlan() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  R2rPlan(const R2rPlan&) = delete;
  R2rPlan& operator=(const R2rPlan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

void require_weight(double w, const char* name) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorCode::WeightOutOfRange,
                std::string(name) + " weight " + std::to_string(w) + " outside [0,1]");
  }
}

double region_mean(const SaliencyMap& map, PixelRect rect) {
  double acc = 0.0;
  for (int r = rect.row0; r < rect.row1; ++r) {
    for (int c = rect.col0; c < rect.col1; ++c) acc += map.at(r, c);
  }
  const double n = static_cast<double>(rect.row1 - rect.row0) * (rect.col1 - rect.col0);
  return std::clamp(acc / n, 0.0, 1.0);
}

}  // namespace

RealGrid signature_reconstruction(const RealGrid& channel) {
  const int rows = channel.rows();
  const int cols = channel.cols();
  std::vector<double> buf(channel.values().begin(), channel.values().end());
  std::vector<double> coef(buf.size());
  R2rPlan forward(rows, cols, buf.data(), coef.data(), FFTW_REDFT10);
  R2rPlan inverse(rows, cols, coef.data(), buf.data(), FFTW_REDFT01);

  forward.execute();
  double peak = 0.0;
  for (const double v : coef) peak = std::max(peak, std::abs(v));
  const double cutoff = 1e-12 * peak;
  for (double& v : coef) v = std::abs(v) <= cutoff ? 0.0 : (v > 0.0 ? 1.0 : -1.0);
  coef[0] = 0.0;
  inverse.execute();

  RealGrid out(rows, cols);
  std::copy(buf.begin(), buf.end(), out.values().begin());
  return out;
}

RealGrid gaussian_blur(const RealGrid& grid, double sigma) {
  const int rows = grid.rows();
  const int cols = grid.cols();
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-0.5 * (k * k) / (sigma * sigma));
    kernel[static_cast<std::size_t>(k + radius)] = w;
    total += w;
  }
  for (double& w : kernel) w /= total;

  RealGrid tmp(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[static_cast<std::size_t>(k + radius)] * grid.at(r, std::clamp(c + k, 0, cols - 1));
      }
      tmp.at(r, c) = acc;
    }
  }
  RealGrid out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[static_cast<std::size_t>(k + radius)] * tmp.at(std::clamp(r + k, 0, rows - 1), c);
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

SaliencyMap image_signature_saliency(const RealColorImage& img, double sigma_frac) {
  if (!(sigma_frac > 0.0 && sigma_frac < 0.5)) {
    throw Error(ErrorCode::BadValue, "sigma_frac must lie in (0, 0.5)");
  }
  const int rows = img.rows();
  const int cols = img.cols();
  RealGrid energy(rows, cols);
  for (const RealGrid& channel : img.channels) {
    const RealGrid rec = signature_reconstruction(channel);
    auto dst = energy.values();
    auto src = rec.values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k] * src[k];
  }
  if (std::all_of(energy.values().begin(), energy.values().end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorCode::DegenerateImage, "image has no spectral content beyond its mean");
  }
  RealGrid map = gaussian_blur(energy, sigma_frac * std::min(rows, cols));
  const double peak = *std::max_element(map.values().begin(), map.values().end());
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw Error(ErrorCode::DegenerateImage, "saliency map has no positive maximum");
  }
  for (double& v : map.values()) v = std::clamp(v / peak, 0.0, 1.0);
  return map;
}

SaliencyMap image_signature_saliency(const RgbImage& img, double sigma_frac) {
  return image_signature_saliency(RealColorImage::from(img), sigma_frac);
}

WeightMap uniform_weights(const RegionGrid& grid, double w_source, double w_target) {
  require_weight(w_source, "source");
  require_weight(w_target, "target");
  return {std::vector<double>(grid.size(), w_source), std::vector<double>(grid.size(), w_target)};
}

WeightMap saliency_weights(const RegionGrid& grid, const SaliencyMap& source,
                           const SaliencyMap& target) {
  for (const SaliencyMap* map : {&source, &target}) {
    if (map->rows() != grid.rows() || map->cols() != grid.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "saliency map does not match the grid's image");
    }
  }
  WeightMap out;
  out.source.reserve(grid.size());
  out.target.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.source.push_back(region_mean(source, grid.region_rect(k)));
    out.target.push_back(region_mean(target, grid.region_rect(k)));
  }
  return out;
}

}  // namespace covcompose
