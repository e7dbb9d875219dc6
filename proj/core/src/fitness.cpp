#include "covcompose/fitness.hpp"

#include <algorithm>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

std::vector<ReferenceDescriptor> reference_descriptors(const RgbImage& img, const FeatureSpec& spec,
                                                       const RegionGrid& grid, Metric metric) {
  const FeatureTensor tensor = feature_tensor(img, spec);
  std::vector<ReferenceDescriptor> out;
  out.reserve(grid.size());
  for (const Pixel center : grid.centers()) {
    out.emplace_back(metric, region_covariance(tensor, center, grid.half_width()));
  }
  return out;
}

void score_region(Individual& ind, const FitnessContext& ctx, std::size_t k) {
  const SpdMatrix x = regularize(covariance_from_stats(ind.stats[k]));
  Eigen::MatrixXd log_x;
  if (ctx.metric() == Metric::LogEuclidean) log_x = spd_log(x).matrix();
  ind.dist_source[k] = ctx.reference(Source::S, k).distance_to(x, log_x);
  ind.dist_target[k] = ctx.reference(Source::T, k).distance_to(x, log_x);
}

double weighted_total(const Individual& ind, const FitnessContext& ctx) {
  const WeightMap& w = ctx.weights();
  double total = 0.0;
  for (std::size_t k = 0; k < ind.dist_source.size(); ++k) {
    total += w.source[k] * ind.dist_source[k] + w.target[k] * ind.dist_target[k];
  }
  return total;
}

}  // namespace

FitnessContext::FitnessContext(RgbImage source, RgbImage target, FeatureSpec spec, int half_width,
                               Metric metric, WeightMap weights)
    : source_(std::move(source)),
      target_(std::move(target)),
      spec_(std::move(spec)),
      grid_(source_.rows(), source_.cols(), half_width),
      metric_(metric),
      weights_(std::move(weights)) {
  if (!source_.same_shape(target_)) {
    throw Error(ErrorCode::DimensionMismatch, "source and target images differ in size");
  }
  if (weights_.source.size() != grid_.size() || weights_.target.size() != grid_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weight map does not match the region grid");
  }
  refs_source_ = reference_descriptors(source_, spec_, grid_, metric_);
  refs_target_ = reference_descriptors(target_, spec_, grid_, metric_);
  for (std::size_t k = 0; k < source_.size(); ++k) {
    if (source_[k] == target_[k]) ++equal_pixels_;
  }
}

RgbImage render(const FitnessContext& ctx, const PixelMask& mask) {
  RgbImage out = ctx.source();
  const auto flags = mask.flags();
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (flags[k] == Source::T) out[k] = ctx.target()[k];
  }
  return out;
}

Individual make_individual(const FitnessContext& ctx, PixelMask mask) {
  if (mask.rows() != ctx.rows() || mask.cols() != ctx.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "mask does not match the input images");
  }
  Individual ind;
  ind.mask = std::move(mask);
  evaluate_full(ind, ctx);
  return ind;
}

Individual make_individual(const FitnessContext& ctx, Source fill) {
  return make_individual(ctx, PixelMask(ctx.rows(), ctx.cols(), fill));
}

double evaluate_full(Individual& ind, const FitnessContext& ctx) {
  ind.rendered = render(ctx, ind.mask);
  ind.count_source = 0;
  ind.count_target = 0;
  for (std::size_t k = 0; k < ind.rendered.size(); ++k) {
    if (ind.rendered[k] == ctx.source()[k]) ++ind.count_source;
    if (ind.rendered[k] == ctx.target()[k]) ++ind.count_target;
  }
  ind.tensor = feature_tensor(ind.rendered, ctx.spec());
  ind.stats = init_stats(ind.tensor, ctx.grid());
  ind.dist_source.assign(ctx.grid().size(), 0.0);
  ind.dist_target.assign(ctx.grid().size(), 0.0);
  for (std::size_t k = 0; k < ctx.grid().size(); ++k) score_region(ind, ctx, k);
  ind.fitness = weighted_total(ind, ctx);
  return ind.fitness;
}

double evaluate_incremental(Individual& ind, const FitnessContext& ctx,
                            std::span<const Pixel> changed) {
  if (changed.empty()) return ind.fitness;
  const int rows = ctx.rows();
  const int cols = ctx.cols();
  const RgbImage& src = ctx.source();
  const RgbImage& tgt = ctx.target();

  std::vector<char> marked(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
  std::vector<Pixel> window;
  for (const Pixel px : changed) {
    const Rgb now = ctx.image(ind.mask.at(px)).at(px.row, px.col);
    Rgb& cur = ind.rendered.at(px.row, px.col);
    if (cur == now) continue;
    const Rgb s = src.at(px.row, px.col);
    const Rgb t = tgt.at(px.row, px.col);
    ind.count_source += static_cast<long>(now == s) - static_cast<long>(cur == s);
    ind.count_target += static_cast<long>(now == t) - static_cast<long>(cur == t);
    cur = now;
    for (int r = std::max(0, px.row - kStencilRadius); r <= std::min(rows - 1, px.row + kStencilRadius); ++r) {
      for (int c = std::max(0, px.col - kStencilRadius); c <= std::min(cols - 1, px.col + kStencilRadius); ++c) {
        char& m = marked[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
        if (m == 0) {
          m = 1;
          window.push_back({r, c});
        }
      }
    }
  }
  if (window.empty()) return ind.fitness;

  const RegionGrid& grid = ctx.grid();
  std::vector<char> dirty(grid.size(), 0);
  std::vector<double> fresh(ctx.spec().dim());
  for (const Pixel px : window) {
    pixel_features(ind.rendered, ctx.spec(), px.row, px.col, fresh);
    const auto stored = ind.tensor.at(px.row, px.col);
    if (std::equal(fresh.begin(), fresh.end(), stored.begin())) continue;
    apply_pixel_delta(ind.stats, grid, px, stored, fresh, dirty);
    std::copy(fresh.begin(), fresh.end(), stored.begin());
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (dirty[k] != 0) score_region(ind, ctx, k);
  }
  ind.fitness = weighted_total(ind, ctx);
  return ind.fitness;
}

long constraint_value(const Individual& ind) { return ind.constraint(); }

LexKey lex_key(const Individual& ind, long bound) {
  return {std::max(0L, ind.constraint() - bound), ind.fitness};
}

std::weak_ordering lex_compare(const Individual& a, const Individual& b, long bound) {
  return lex_key(a, bound) <=> lex_key(b, bound);
}

long default_bound(int rows, int cols) {
  return static_cast<long>(rows) * static_cast<long>(cols) / 4;
}

}  // namespace covcompose
