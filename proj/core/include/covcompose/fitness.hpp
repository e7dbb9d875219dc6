#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "covcompose/features.hpp"
#include "covcompose/image.hpp"
#include "covcompose/region_covariance.hpp"
#include "covcompose/saliency.hpp"
#include "covcompose/spd.hpp"

namespace covcompose {

/// Which input image a pixel is taken from.
enum class Source : std::uint8_t { S = 0, T = 1 };

/// Per-pixel provenance flags; the genotype of the GA.
class PixelMask {
 public:
  PixelMask() = default;
  PixelMask(int rows, int cols, Source fill)
      : rows_(rows),
        cols_(cols),
        flags_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return flags_.size(); }
  [[nodiscard]] Source at(Pixel px) const noexcept { return flags_[index(px)]; }
  void set(Pixel px, Source s) noexcept { flags_[index(px)] = s; }
  [[nodiscard]] std::span<const Source> flags() const noexcept { return flags_; }

  friend bool operator==(const PixelMask&, const PixelMask&) = default;

 private:
  [[nodiscard]] std::size_t index(Pixel px) const noexcept {
    return static_cast<std::size_t>(px.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(px.col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Source> flags_;
};

/// Everything fixed for one composition problem: inputs, grid, per-region
/// reference descriptors for S and T, weights and metric.
class FitnessContext {
 public:
  /// Throws Error(DimensionMismatch) if S, T or the weights disagree in shape.
  FitnessContext(RgbImage source, RgbImage target, FeatureSpec spec, int half_width, Metric metric,
                 WeightMap weights);

  [[nodiscard]] const RgbImage& source() const noexcept { return source_; }
  [[nodiscard]] const RgbImage& target() const noexcept { return target_; }
  [[nodiscard]] const RgbImage& image(Source s) const noexcept {
    return s == Source::S ? source_ : target_;
  }
  [[nodiscard]] const FeatureSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const RegionGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] Metric metric() const noexcept { return metric_; }
  [[nodiscard]] const WeightMap& weights() const noexcept { return weights_; }
  [[nodiscard]] const ReferenceDescriptor& reference(Source s, std::size_t region) const {
    return s == Source::S ? refs_source_[region] : refs_target_[region];
  }
  /// |{(i,j) : S_ij = T_ij}|
  [[nodiscard]] long equal_pixel_count() const noexcept { return equal_pixels_; }
  [[nodiscard]] int rows() const noexcept { return source_.rows(); }
  [[nodiscard]] int cols() const noexcept { return source_.cols(); }

 private:
  RgbImage source_;
  RgbImage target_;
  FeatureSpec spec_;
  RegionGrid grid_;
  Metric metric_;
  WeightMap weights_;
  std::vector<ReferenceDescriptor> refs_source_;
  std::vector<ReferenceDescriptor> refs_target_;
  long equal_pixels_ = 0;
};

/// A mask plus the caches needed to re-score it after local edits.
struct Individual {
  PixelMask mask;
  RgbImage rendered;
  FeatureTensor tensor;
  std::vector<RegionStats> stats;
  std::vector<double> dist_source;
  std::vector<double> dist_target;
  double fitness = 0.0;
  long count_source = 0;  // pixels where X equals S
  long count_target = 0;  // pixels where X equals T

  [[nodiscard]] long constraint() const noexcept {
    return count_source > count_target ? count_source - count_target : count_target - count_source;
  }
};

/// Builds and fully evaluates an individual with the given mask.
Individual make_individual(const FitnessContext& ctx, PixelMask mask);
Individual make_individual(const FitnessContext& ctx, Source fill);

/// X_ij = S_ij where the mask says S, else T_ij.
RgbImage render(const FitnessContext& ctx, const PixelMask& mask);

/// Rebuilds every cache from the mask and returns the fitness
/// sum_k (wS_k d(X_k, S_k) + wT_k d(X_k, T_k)).
double evaluate_full(Individual& ind, const FitnessContext& ctx);

/// Re-scores after the mask flipped at `changed`: refreshes the rendered
/// pixels and counts, the feature vectors within kStencilRadius, the running
/// sums and the distances of dirty regions only.
double evaluate_incremental(Individual& ind, const FitnessContext& ctx,
                            std::span<const Pixel> changed);

long constraint_value(const Individual& ind);

/// Lexicographic key (max(0, constraint - B), fitness); smaller is better.
struct LexKey {
  long violation = 0;
  double fitness = 0.0;

  friend std::weak_ordering operator<=>(const LexKey& a, const LexKey& b) {
    if (a.violation != b.violation) return a.violation <=> b.violation;
    if (a.fitness < b.fitness) return std::weak_ordering::less;
    if (b.fitness < a.fitness) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  friend bool operator==(const LexKey& a, const LexKey& b) { return (a <=> b) == 0; }
};

LexKey lex_key(const Individual& ind, long bound);
std::weak_ordering lex_compare(const Individual& a, const Individual& b, long bound);

/// Default constraint bound floor(0.25 m n).
long default_bound(int rows, int cols);

}  // namespace covcompose
