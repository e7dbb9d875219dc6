#include "covcompose/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

struct PngImage {
  png_image image{};

  PngImage() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

void write_png(const std::filesystem::path& path, png_uint_32 width, png_uint_32 height,
               png_uint_32 format, const std::vector<png_byte>& buffer) {
  PngImage png;
  png.image.width = width;
  png.image.height = height;
  png.image.format = format;
  if (png_image_write_to_file(&png.image, path.c_str(), 0, buffer.data(), 0, nullptr) == 0) {
    throw Error(ErrorCode::IoError,
                "cannot write '" + path.string() + "': " + png.image.message);
  }
}

}  // namespace

RgbImage load_png(const std::filesystem::path& path) {
  PngImage png;
  if (png_image_begin_read_from_file(&png.image, path.c_str()) == 0) {
    throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "': " + png.image.message);
  }
  png.image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png.image));
  // Composite any alpha onto black rather than guessing a background colour.
  png_color black{0, 0, 0};
  if (png_image_finish_read(&png.image, &black, buffer.data(), 0, nullptr) == 0) {
    throw Error(ErrorCode::IoError, "cannot decode '" + path.string() + "': " + png.image.message);
  }
  RgbImage img(static_cast<int>(png.image.height), static_cast<int>(png.image.width));
  for (std::size_t k = 0; k < img.size(); ++k) {
    img[k] = Rgb{buffer[3 * k], buffer[3 * k + 1], buffer[3 * k + 2]};
  }
  return img;
}

std::pair<RgbImage, RgbImage> load_png_pair(const std::filesystem::path& source,
                                            const std::filesystem::path& target) {
  RgbImage s = load_png(source);
  RgbImage t = load_png(target);
  if (!s.same_shape(t)) {
    throw Error(ErrorCode::MissingInput,
                "source is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                    " but target is " + std::to_string(t.rows()) + "x" +
                    std::to_string(t.cols()));
  }
  return {std::move(s), std::move(t)};
}

void save_png(const std::filesystem::path& path, const RgbImage& img) {
  std::vector<png_byte> buffer(img.size() * 3);
  for (std::size_t k = 0; k < img.size(); ++k) {
    buffer[3 * k] = img[k].r;
    buffer[3 * k + 1] = img[k].g;
    buffer[3 * k + 2] = img[k].b;
  }
  write_png(path, static_cast<png_uint_32>(img.cols()), static_cast<png_uint_32>(img.rows()),
            PNG_FORMAT_RGB, buffer);
}

void save_grey_png(const std::filesystem::path& path, const RealGrid& grid) {
  const auto values = grid.values();
  std::vector<png_byte> buffer(values.size());
  std::transform(values.begin(), values.end(), buffer.begin(), [](double v) {
    return static_cast<png_byte>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  });
  write_png(path, static_cast<png_uint_32>(grid.cols()), static_cast<png_uint_32>(grid.rows()),
            PNG_FORMAT_GRAY, buffer);
}

}  // namespace covcompose
