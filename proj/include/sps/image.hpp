#pragma once

#include "sps/common.hpp"

namespace sps {

/// Real-valued 2D image, row-major. The solvers treat `pix` as a point of
/// R^(width*height); the layout only matters to the operators.
struct Image {
  int width = 0;
  int height = 0;
  Vec pix;

  Image() = default;
  Image(int w, int h, double fill = 0.0)
      : width(w), height(h), pix(static_cast<std::size_t>(w) * h, fill) {}

  std::size_t size() const { return pix.size(); }
  double& at(int row, int col) {
    return pix[static_cast<std::size_t>(row) * width + col];
  }
  double at(int row, int col) const {
    return pix[static_cast<std::size_t>(row) * width + col];
  }
};

/// Deterministic piecewise-constant test image in [0,255]: flat background
/// with rectangles, a disk and a bar, scaled to the requested size.
Image make_synthetic_image(int width, int height);

}  // namespace sps
