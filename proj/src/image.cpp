#include "sps/image.hpp"

namespace sps {

Image make_synthetic_image(int width, int height) {
  require(width >= 4 && height >= 4, "synthetic image: size too small");
  Image img(width, height, 30.0);
  const double w = width, h = height;
  auto inside = [](double v, double lo, double hi) {
    return v >= lo && v < hi;
  };
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      const double fy = i / h, fx = j / w;
      if (inside(fx, 0.10, 0.48) && inside(fy, 0.10, 0.45))
        img.at(i, j) = 200.0;
      if (inside(fx, 0.56, 0.92) && inside(fy, 0.56, 0.92))
        img.at(i, j) = 120.0;
      const double dx = fx - 0.70, dy = fy - 0.28;
      if (dx * dx + dy * dy < 0.15 * 0.15) img.at(i, j) = 230.0;
      if (inside(fx, 0.08, 0.44) && inside(fy, 0.72, 0.86)) img.at(i, j) = 80.0;
    }
  }
  return img;
}

}  // namespace sps
