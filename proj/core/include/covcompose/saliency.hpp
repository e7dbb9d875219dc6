#pragma once

#include <vector>

#include "covcompose/image.hpp"
#include "covcompose/region_covariance.hpp"

namespace covcompose {

inline constexpr double kDefaultSigmaFrac = 0.04;

/// Per-pixel saliency in [0, 1] with maximum exactly 1.
using SaliencyMap = RealGrid;

/// inverse_dct(sign(dct(channel))) with the DC term and coefficients below
/// 1e-12 of the channel's largest coefficient treated as zero.
RealGrid signature_reconstruction(const RealGrid& channel);

/// DCT image-signature saliency: per colour channel the squared signature
/// reconstruction, summed over channels, Gaussian-blurred with
/// sigma = sigma_frac * min(m, n), then divided by its maximum.
/// Throws Error(DegenerateImage) when the map is identically zero.
SaliencyMap image_signature_saliency(const RgbImage& img, double sigma_frac = kDefaultSigmaFrac);
SaliencyMap image_signature_saliency(const RealColorImage& img,
                                     double sigma_frac = kDefaultSigmaFrac);

/// Separable Gaussian blur with replicate borders; kernel radius ceil(3 sigma).
RealGrid gaussian_blur(const RealGrid& grid, double sigma);

/// Per-region weights for the source (S) and target (T) terms.
struct WeightMap {
  std::vector<double> source;
  std::vector<double> target;
};

/// Every region gets (w_source, w_target). Throws Error(WeightOutOfRange).
WeightMap uniform_weights(const RegionGrid& grid, double w_source, double w_target);

/// Region weight = mean saliency over the region. Throws Error(DimensionMismatch).
WeightMap saliency_weights(const RegionGrid& grid, const SaliencyMap& source,
                           const SaliencyMap& target);

}  // namespace covcompose
