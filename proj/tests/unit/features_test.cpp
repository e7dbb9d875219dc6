#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "covcompose/error.hpp"
#include "covcompose/features.hpp"
#include "test_support.hpp"

namespace covcompose {
namespace {

RgbImage single(Rgb px) { return RgbImage(1, 1, px); }

RealGrid ramp(int rows, int cols, double (*f)(int, int)) {
  RealGrid g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) g.at(r, c) = f(r + 1, c + 1);
  }
  return g;
}

TEST(Intensity, KnownPixels) {
  EXPECT_EQ(intensity(single({0, 0, 0})).at(0, 0), 0.0);
  // 255 * (0.2989 + 0.5870 + 0.1140)
  EXPECT_NEAR(intensity(single({255, 255, 255})).at(0, 0), 254.9745, 1e-12);
  EXPECT_NEAR(intensity(single({255, 0, 0})).at(0, 0), 76.2195, 1e-12);
}

TEST(Intensity, LinearInChannelScale) {
  Rng rng(3);
  const RgbImage img = testing::random_image(6, 5, rng);
  RealColorImage scaled = RealColorImage::from(img);
  for (auto& ch : scaled.channels) {
    for (double& v : ch.values()) v *= 0.37;
  }
  const RealGrid base = intensity(img);
  const RealGrid got = intensity(scaled);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 5; ++c) EXPECT_NEAR(got.at(r, c), 0.37 * base.at(r, c), 1e-12);
  }
}

TEST(Derivatives, ConstantGridIsZeroEverywhere) {
  const DerivativeGrids d = derivatives(RealGrid(5, 4, 17.25));
  for (const RealGrid* g : {&d.di, &d.dj, &d.dii, &d.djj, &d.dij}) {
    for (const double v : g->values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(Derivatives, RowRampInterior) {
  const DerivativeGrids d = derivatives(ramp(6, 6, [](int i, int) { return double(i); }));
  for (int r = 1; r < 5; ++r) {
    for (int c = 0; c < 6; ++c) {
      EXPECT_EQ(d.di.at(r, c), 1.0);
      EXPECT_EQ(d.dii.at(r, c), 0.0);
      EXPECT_EQ(d.dj.at(r, c), 0.0);
    }
  }
  // Replicate padding halves the first difference at the border.
  EXPECT_EQ(d.di.at(0, 0), 0.5);
}

TEST(Derivatives, MixedOnProductRamp) {
  const DerivativeGrids d = derivatives(ramp(7, 7, [](int i, int j) { return double(i * j); }));
  for (int r = 2; r < 5; ++r) {
    for (int c = 2; c < 5; ++c) EXPECT_DOUBLE_EQ(d.dij.at(r, c), 1.0);
  }
}

TEST(Derivatives, TooSmallThrows) {
  try {
    derivatives(RealGrid(2, 5));
    FAIL() << "expected DimensionTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionTooSmall);
  }
}

TEST(EdgeFeatures, KnownValues) {
  RealGrid di(1, 3);
  RealGrid dj(1, 3);
  di.at(0, 1) = 3;
  dj.at(0, 1) = 4;
  di.at(0, 2) = 1;
  const EdgeGrids e = edge_features(di, dj);
  EXPECT_EQ(e.magnitude.at(0, 0), 0.0);
  EXPECT_EQ(e.orientation.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(e.magnitude.at(0, 1), 5.0);
  EXPECT_NEAR(e.orientation.at(0, 1), 0.6435011087932844, 1e-15);
  EXPECT_DOUBLE_EQ(e.magnitude.at(0, 2), 1.0);
  EXPECT_DOUBLE_EQ(e.orientation.at(0, 2), std::numbers::pi / 2);
}

TEST(EdgeFeatures, OrientationRangeOnRandomGradients) {
  Rng rng(9);
  RealGrid di(20, 20);
  RealGrid dj(20, 20);
  for (double& v : di.values()) v = (rng.uniform01() - 0.5) * 200;
  for (double& v : dj.values()) v = (rng.uniform01() - 0.5) * 200;
  const EdgeGrids e = edge_features(di, dj);
  for (const double v : e.orientation.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, std::numbers::pi / 2);
  }
  for (const double v : e.magnitude.values()) EXPECT_GE(v, 0.0);
}

TEST(Hsv, HexconeValues) {
  const auto check = [](Rgb px, double h, double s, double v) {
    const HsvGrids g = rgb_to_hsv(single(px));
    EXPECT_NEAR(g.h.at(0, 0), h, 1e-12);
    EXPECT_NEAR(g.s.at(0, 0), s, 1e-12);
    EXPECT_NEAR(g.v.at(0, 0), v, 1e-12);
  };
  check({0, 0, 0}, 0, 0, 0);
  check({255, 0, 0}, 0, 255, 255);
  check({0, 255, 0}, 85, 255, 255);
  check({128, 128, 128}, 0, 0, 128);
  // Python colorsys.rgb_to_hsv scaled by 255.
  check({10, 200, 90}, 102.89473684210526, 242.25, 200);
}

TEST(FeatureSpec, PresetsAndValidation) {
  EXPECT_EQ(FeatureSpec::set1().dim(), 7u);
  EXPECT_EQ(FeatureSpec::set2().dim(), 5u);
  EXPECT_EQ(FeatureSpec::set3().dim(), 5u);
  EXPECT_EQ(FeatureSpec::set1().to_string(), "i,j,r,g,b,mag,orient");
  EXPECT_EQ(FeatureSpec::parse("2"), FeatureSpec::set2());
  EXPECT_EQ(FeatureSpec::parse("h, s,v ,mag,orient"), FeatureSpec::set3());
  EXPECT_THROW(FeatureSpec::parse("i,i"), Error);
  EXPECT_THROW(FeatureSpec::parse("i"), Error);
  EXPECT_THROW(FeatureSpec::parse("i,q"), Error);
}

TEST(FeatureTensor, CoordinatesAreOneBased) {
  const FeatureTensor t = feature_tensor(RgbImage(2, 2), FeatureSpec::parse("i,j"));
  EXPECT_EQ(t.at(0, 0)[0], 1);
  EXPECT_EQ(t.at(0, 0)[1], 1);
  EXPECT_EQ(t.at(0, 1)[1], 2);
  EXPECT_EQ(t.at(1, 0)[0], 2);
  EXPECT_EQ(t.at(1, 1)[0], 2);
  EXPECT_EQ(t.at(1, 1)[1], 2);
}

TEST(FeatureTensor, DerivativeFeaturesNeedThreeByThree) {
  EXPECT_THROW(feature_tensor(RgbImage(2, 2), FeatureSpec::set1()), Error);
  EXPECT_NO_THROW(feature_tensor(RgbImage(2, 2), FeatureSpec::set2()));
}

TEST(FeatureTensor, AllFeaturesFiniteAndConsistentWithGrids) {
  Rng rng(5);
  const RgbImage img = testing::random_image(9, 11, rng);
  const FeatureSpec all = FeatureSpec::parse("i,j,r,g,b,di,dj,dii,djj,dij,mag,orient,h,s,v");
  const FeatureTensor t = feature_tensor(img, all);
  for (const double v : t.values()) EXPECT_TRUE(std::isfinite(v));
  const DerivativeGrids d = derivatives(intensity(img));
  const EdgeGrids e = edge_features(d.di, d.dj);
  const HsvGrids hsv = rgb_to_hsv(img);
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 11; ++c) {
      const auto phi = t.at(r, c);
      EXPECT_EQ(phi[2], img.at(r, c).r);
      EXPECT_EQ(phi[5], std::abs(d.di.at(r, c)));
      EXPECT_EQ(phi[6], std::abs(d.dj.at(r, c)));
      EXPECT_EQ(phi[7], std::abs(d.dii.at(r, c)));
      EXPECT_EQ(phi[8], std::abs(d.djj.at(r, c)));
      EXPECT_EQ(phi[9], std::abs(d.dij.at(r, c)));
      EXPECT_EQ(phi[10], e.magnitude.at(r, c));
      EXPECT_EQ(phi[11], e.orientation.at(r, c));
      EXPECT_EQ(phi[12], hsv.h.at(r, c));
    }
  }
}

TEST(RecomputeWindow, WholeImageMatchesFullRecompute) {
  Rng rng(11);
  const RgbImage img = testing::random_image(12, 10, rng);
  FeatureTensor t(12, 10, 7);
  recompute_feature_window(t, img, FeatureSpec::set1(), {0, 0, 12, 10});
  EXPECT_EQ(t, feature_tensor(img, FeatureSpec::set1()));
}

TEST(RecomputeWindow, EmptyRectIsNoOp) {
  Rng rng(12);
  const RgbImage img = testing::random_image(8, 8, rng);
  FeatureTensor t = feature_tensor(img, FeatureSpec::set1());
  const FeatureTensor before = t;
  recompute_feature_window(t, testing::random_image(8, 8, rng), FeatureSpec::set1(), {3, 3, 3, 5});
  EXPECT_EQ(t, before);
}

TEST(RecomputeWindow, SinglePixelChangeStaysWithinStencilRadius) {
  Rng rng(13);
  const FeatureSpec all = FeatureSpec::parse("i,j,r,g,b,di,dj,dii,djj,dij,mag,orient,h,s,v");
  for (int trial = 0; trial < 50; ++trial) {
    RgbImage img = testing::random_image(10, 9, rng);
    const FeatureTensor before = feature_tensor(img, all);
    const int pr = static_cast<int>(rng.uniform_index(10));
    const int pc = static_cast<int>(rng.uniform_index(9));
    img.at(pr, pc) = {static_cast<std::uint8_t>(rng.uniform_index(256)), 7, 200};
    const FeatureTensor full = feature_tensor(img, all);
    FeatureTensor patched = before;
    recompute_feature_window(patched, img, all, {pr, pc, pr + 1, pc + 1});
    for (int r = 0; r < 10; ++r) {
      for (int c = 0; c < 9; ++c) {
        for (std::size_t k = 0; k < all.dim(); ++k) {
          EXPECT_NEAR(patched.at(r, c)[k], full.at(r, c)[k], 1e-12);
          if (std::max(std::abs(r - pr), std::abs(c - pc)) > kStencilRadius) {
            EXPECT_EQ(full.at(r, c)[k], before.at(r, c)[k]);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace covcompose
