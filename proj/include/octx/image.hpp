#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "octx/errors.hpp"

namespace octx {

using Index = Eigen::Index;

/// 8-bit grayscale frame. Row-major so (row, col) indexing matches the
/// on-disk PGM layout; width = cols, height = rows.
struct GrayImage {
  using Pixels = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Pixels pixels;

  GrayImage() = default;
  GrayImage(Index height, Index width) : pixels(Pixels::Zero(height, width)) {
    if (height < 1 || width < 1) throw ParameterError("GrayImage: width and height must be >= 1");
  }
  explicit GrayImage(Pixels p) : pixels(std::move(p)) {}

  Index width() const { return pixels.cols(); }
  Index height() const { return pixels.rows(); }

  std::uint8_t operator()(Index row, Index col) const { return pixels(row, col); }
  std::uint8_t& operator()(Index row, Index col) { return pixels(row, col); }

  bool operator==(const GrayImage& other) const { return pixels == other.pixels; }
};

/// Monotone intensity quantization: v -> floor(v * levels / 256), so every
/// output value lies in [0, levels-1].
inline GrayImage quantize(const GrayImage& img, int levels) {
  if (levels < 2 || levels > 256) throw ParameterError("quantize: levels must be in [2, 256]");
  GrayImage out(img.height(), img.width());
  out.pixels = img.pixels.unaryExpr([levels](std::uint8_t v) {
    return static_cast<std::uint8_t>((static_cast<int>(v) * levels) >> 8);
  });
  return out;
}

/// Intensity complement, v -> 255 - v. Involution used as the x- twin transform.
inline GrayImage complement(const GrayImage& img) {
  GrayImage out(img.height(), img.width());
  out.pixels = img.pixels.unaryExpr([](std::uint8_t v) { return static_cast<std::uint8_t>(255 - v); });
  return out;
}

}  // namespace octx
