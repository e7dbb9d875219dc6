#pragma once

#include <filesystem>

#include "covcompose/image.hpp"

namespace covcompose {

/// Loads any PNG as 8-bit RGB; alpha is discarded. Throws Error(IoError).
RgbImage load_png(const std::filesystem::path& path);

/// Loads two PNGs and rejects them with Error(MissingInput) unless their sizes match.
std::pair<RgbImage, RgbImage> load_png_pair(const std::filesystem::path& source,
                                            const std::filesystem::path& target);

void save_png(const std::filesystem::path& path, const RgbImage& img);

/// Writes a [0,1] grid as an 8-bit greyscale PNG (values clamped, rounded).
void save_grey_png(const std::filesystem::path& path, const RealGrid& grid);

}  // namespace covcompose
