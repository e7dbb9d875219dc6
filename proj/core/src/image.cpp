#include "covcompose/image.hpp"

#include "covcompose/error.hpp"

namespace covcompose {

RgbImage::RgbImage(int rows, int cols, Rgb fill) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::BadValue, "image dimensions must be positive");
  }
  pixels_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

RealColorImage RealColorImage::from(const RgbImage& img) {
  RealColorImage out;
  for (auto& ch : out.channels) ch = RealGrid(img.rows(), img.cols());
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      const Rgb px = img.at(r, c);
      out.channels[0].at(r, c) = px.r;
      out.channels[1].at(r, c) = px.g;
      out.channels[2].at(r, c) = px.b;
    }
  }
  return out;
}

}  // namespace covcompose
