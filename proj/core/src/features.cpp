#include "covcompose/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

constexpr std::array<std::pair<FeatureId, std::string_view>, 15> kNames{{
    {FeatureId::Row, "i"},
    {FeatureId::Col, "j"},
    {FeatureId::Red, "r"},
    {FeatureId::Green, "g"},
    {FeatureId::Blue, "b"},
    {FeatureId::AbsDi, "di"},
    {FeatureId::AbsDj, "dj"},
    {FeatureId::AbsDii, "dii"},
    {FeatureId::AbsDjj, "djj"},
    {FeatureId::AbsDij, "dij"},
    {FeatureId::EdgeMagnitude, "mag"},
    {FeatureId::EdgeOrientation, "orient"},
    {FeatureId::Hue, "h"},
    {FeatureId::Saturation, "s"},
    {FeatureId::Value, "v"},
}};

inline double intensity_of(double r, double g, double b) noexcept {
  return 0.2989 * r + 0.5870 * g + 0.1140 * b;
}

inline double intensity_of(Rgb px) noexcept { return intensity_of(px.r, px.g, px.b); }

std::array<double, 3> hsv_of(Rgb px) noexcept {
  const int hi = std::max({px.r, px.g, px.b});
  const int lo = std::min({px.r, px.g, px.b});
  const int delta = hi - lo;
  const double v = hi;
  const double s = hi == 0 ? 0.0 : 255.0 * static_cast<double>(delta) / hi;
  double sextant = 0.0;
  if (delta != 0) {
    const double d = delta;
    if (hi == px.r) {
      sextant = (static_cast<double>(px.g) - px.b) / d;
      if (sextant < 0.0) sextant += 6.0;
    } else if (hi == px.g) {
      sextant = (static_cast<double>(px.b) - px.r) / d + 2.0;
    } else {
      sextant = (static_cast<double>(px.r) - px.g) / d + 4.0;
    }
  }
  return {sextant * (255.0 / 6.0), s, v};
}

// Derivative stencils shared by the grid path and the per-pixel path so both
// produce identical values. `at` must accept any in-range (row, col).
template <class IntensityAt>
struct Stencil {
  const IntensityAt& at;
  int rows;
  int cols;

  [[nodiscard]] int cr(int r) const noexcept { return std::clamp(r, 0, rows - 1); }
  [[nodiscard]] int cc(int c) const noexcept { return std::clamp(c, 0, cols - 1); }

  [[nodiscard]] double di(int r, int c) const { return (at(cr(r + 1), c) - at(cr(r - 1), c)) * 0.5; }
  [[nodiscard]] double dj(int r, int c) const { return (at(r, cc(c + 1)) - at(r, cc(c - 1))) * 0.5; }
  [[nodiscard]] double dii(int r, int c) const {
    return at(cr(r + 1), c) - 2.0 * at(r, c) + at(cr(r - 1), c);
  }
  [[nodiscard]] double djj(int r, int c) const {
    return at(r, cc(c + 1)) - 2.0 * at(r, c) + at(r, cc(c - 1));
  }
  [[nodiscard]] double dij(int r, int c) const { return (di(r, cc(c + 1)) - di(r, cc(c - 1))) * 0.5; }
};

inline double edge_orientation(double di, double dj) noexcept {
  return std::atan2(std::abs(di), std::abs(dj));
}

inline double edge_magnitude(double di, double dj) noexcept { return std::sqrt(di * di + dj * dj); }

template <class IntensityAt>
void features_at(const Stencil<IntensityAt>& st, const RgbImage& img, const FeatureSpec& spec,
                 int r, int c, std::span<double> out) {
  const Rgb px = img.at(r, c);
  std::array<double, 3> hsv{};
  bool have_hsv = false;
  double di = 0.0;
  double dj = 0.0;
  bool have_grad = false;
  const auto gradient = [&] {
    if (!have_grad) {
      di = st.di(r, c);
      dj = st.dj(r, c);
      have_grad = true;
    }
  };
  const auto colour = [&](std::size_t k) {
    if (!have_hsv) {
      hsv = hsv_of(px);
      have_hsv = true;
    }
    return hsv[k];
  };

  std::size_t k = 0;
  for (const FeatureId id : spec.ids()) {
    double value = 0.0;
    switch (id) {
      case FeatureId::Row: value = r + 1; break;
      case FeatureId::Col: value = c + 1; break;
      case FeatureId::Red: value = px.r; break;
      case FeatureId::Green: value = px.g; break;
      case FeatureId::Blue: value = px.b; break;
      case FeatureId::AbsDi: gradient(); value = std::abs(di); break;
      case FeatureId::AbsDj: gradient(); value = std::abs(dj); break;
      case FeatureId::AbsDii: value = std::abs(st.dii(r, c)); break;
      case FeatureId::AbsDjj: value = std::abs(st.djj(r, c)); break;
      case FeatureId::AbsDij: value = std::abs(st.dij(r, c)); break;
      case FeatureId::EdgeMagnitude: gradient(); value = edge_magnitude(di, dj); break;
      case FeatureId::EdgeOrientation: gradient(); value = edge_orientation(di, dj); break;
      case FeatureId::Hue: value = colour(0); break;
      case FeatureId::Saturation: value = colour(1); break;
      case FeatureId::Value: value = colour(2); break;
    }
    out[k++] = value;
  }
}

void require_stencil_size(int rows, int cols) {
  if (rows < 3 || cols < 3) {
    throw Error(ErrorCode::DimensionTooSmall, "derivatives need at least a 3x3 image");
  }
}

}  // namespace

std::string_view feature_name(FeatureId id) noexcept {
  for (const auto& [fid, name] : kNames) {
    if (fid == id) return name;
  }
  return "?";
}

FeatureSpec::FeatureSpec(std::vector<FeatureId> ids) : ids_(std::move(ids)) {
  if (ids_.size() < 2) {
    throw Error(ErrorCode::BadValue, "a feature spec needs at least two features");
  }
  for (std::size_t a = 0; a < ids_.size(); ++a) {
    for (std::size_t b = a + 1; b < ids_.size(); ++b) {
      if (ids_[a] == ids_[b]) {
        throw Error(ErrorCode::BadValue,
                    "duplicate feature '" + std::string(feature_name(ids_[a])) + "'");
      }
    }
  }
}

FeatureSpec FeatureSpec::set1() {
  using enum FeatureId;
  return FeatureSpec({Row, Col, Red, Green, Blue, EdgeMagnitude, EdgeOrientation});
}

FeatureSpec FeatureSpec::set2() {
  using enum FeatureId;
  return FeatureSpec({Row, Col, Hue, Saturation, Value});
}

FeatureSpec FeatureSpec::set3() {
  using enum FeatureId;
  return FeatureSpec({Hue, Saturation, Value, EdgeMagnitude, EdgeOrientation});
}

FeatureSpec FeatureSpec::parse(std::string_view text) {
  if (text == "1") return set1();
  if (text == "2") return set2();
  if (text == "3") return set3();
  std::vector<FeatureId> ids;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    const auto it = std::find_if(kNames.begin(), kNames.end(),
                                 [&](const auto& entry) { return entry.second == token; });
    if (it == kNames.end()) {
      throw Error(ErrorCode::BadValue, "unknown feature '" + std::string(token) + "'");
    }
    ids.push_back(it->first);
    pos = comma + 1;
  }
  return FeatureSpec(std::move(ids));
}

bool FeatureSpec::needs_derivatives() const noexcept {
  return std::any_of(ids_.begin(), ids_.end(), [](FeatureId id) {
    switch (id) {
      case FeatureId::AbsDi:
      case FeatureId::AbsDj:
      case FeatureId::AbsDii:
      case FeatureId::AbsDjj:
      case FeatureId::AbsDij:
      case FeatureId::EdgeMagnitude:
      case FeatureId::EdgeOrientation:
        return true;
      default:
        return false;
    }
  });
}

std::string FeatureSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < ids_.size(); ++k) {
    if (k > 0) os << ',';
    os << feature_name(ids_[k]);
  }
  return os.str();
}

RealGrid intensity(const RgbImage& img) {
  RealGrid out(img.rows(), img.cols());
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) out.at(r, c) = intensity_of(img.at(r, c));
  }
  return out;
}

RealGrid intensity(const RealColorImage& img) {
  RealGrid out(img.rows(), img.cols());
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      out.at(r, c) = intensity_of(img.channels[0].at(r, c), img.channels[1].at(r, c),
                                  img.channels[2].at(r, c));
    }
  }
  return out;
}

DerivativeGrids derivatives(const RealGrid& grid) {
  const int rows = grid.rows();
  const int cols = grid.cols();
  require_stencil_size(rows, cols);
  const auto at = [&grid](int r, int c) { return grid.at(r, c); };
  const Stencil<decltype(at)> st{at, rows, cols};
  DerivativeGrids out{RealGrid(rows, cols), RealGrid(rows, cols), RealGrid(rows, cols),
                      RealGrid(rows, cols), RealGrid(rows, cols)};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out.di.at(r, c) = st.di(r, c);
      out.dj.at(r, c) = st.dj(r, c);
      out.dii.at(r, c) = st.dii(r, c);
      out.djj.at(r, c) = st.djj(r, c);
      out.dij.at(r, c) = st.dij(r, c);
    }
  }
  return out;
}

EdgeGrids edge_features(const RealGrid& di, const RealGrid& dj) {
  if (di.rows() != dj.rows() || di.cols() != dj.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "derivative grids differ in shape");
  }
  EdgeGrids out{RealGrid(di.rows(), di.cols()), RealGrid(di.rows(), di.cols())};
  for (int r = 0; r < di.rows(); ++r) {
    for (int c = 0; c < di.cols(); ++c) {
      out.magnitude.at(r, c) = edge_magnitude(di.at(r, c), dj.at(r, c));
      out.orientation.at(r, c) = edge_orientation(di.at(r, c), dj.at(r, c));
    }
  }
  return out;
}

HsvGrids rgb_to_hsv(const RgbImage& img) {
  HsvGrids out{RealGrid(img.rows(), img.cols()), RealGrid(img.rows(), img.cols()),
               RealGrid(img.rows(), img.cols())};
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      const auto hsv = hsv_of(img.at(r, c));
      out.h.at(r, c) = hsv[0];
      out.s.at(r, c) = hsv[1];
      out.v.at(r, c) = hsv[2];
    }
  }
  return out;
}

FeatureTensor feature_tensor(const RgbImage& img, const FeatureSpec& spec) {
  const int rows = img.rows();
  const int cols = img.cols();
  if (spec.needs_derivatives()) require_stencil_size(rows, cols);
  FeatureTensor out(rows, cols, spec.dim());
  const RealGrid lum = intensity(img);
  const auto at = [&lum](int r, int c) { return lum.at(r, c); };
  const Stencil<decltype(at)> st{at, rows, cols};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) features_at(st, img, spec, r, c, out.at(r, c));
  }
  return out;
}

void pixel_features(const RgbImage& img, const FeatureSpec& spec, int row, int col,
                    std::span<double> out) {
  const int rows = img.rows();
  const int cols = img.cols();
  if (spec.needs_derivatives()) require_stencil_size(rows, cols);
  const auto at = [&img](int r, int c) { return intensity_of(img.at(r, c)); };
  const Stencil<decltype(at)> st{at, rows, cols};
  features_at(st, img, spec, row, col, out);
}

void recompute_feature_window(FeatureTensor& tensor, const RgbImage& img,
                              const FeatureSpec& spec, PixelRect rect) {
  if (rect.empty()) return;
  if (tensor.rows() != img.rows() || tensor.cols() != img.cols() ||
      tensor.dim() != spec.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "tensor does not match image/spec");
  }
  const int r0 = std::max(0, rect.row0 - kStencilRadius);
  const int r1 = std::min(img.rows(), rect.row1 + kStencilRadius);
  const int c0 = std::max(0, rect.col0 - kStencilRadius);
  const int c1 = std::min(img.cols(), rect.col1 + kStencilRadius);
  if (r0 >= r1 || c0 >= c1) return;
  if (spec.needs_derivatives()) require_stencil_size(img.rows(), img.cols());
  const auto at = [&img](int r, int c) { return intensity_of(img.at(r, c)); };
  const Stencil<decltype(at)> st{at, img.rows(), img.cols()};
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) features_at(st, img, spec, r, c, tensor.at(r, c));
  }
}

}  // namespace covcompose
