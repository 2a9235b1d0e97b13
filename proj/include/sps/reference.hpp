#pragma once

#include <algorithm>
#include <cmath>

#include "sps/common.hpp"
#include "sps/kernels.hpp"
#include "sps/rng.hpp"

namespace sps::ref {

// Plain serial twins of the kernels in sps/kernels.hpp. Kept for testing and
// for the kernel benchmark; reductions use the same 1024-element blocking as
// the parallel versions so the two are comparable bit for bit.

inline void forward_point(const Vec& x, double step, const Vec& drift,
                          Vec& out) {
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - step * drift[i];
}

inline void relax_update(Vec& x, double lambda, const Vec& cand) {
  if (lambda == 1.0) {
    x = cand;
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = x[i] + lambda * (cand[i] - x[i]);
}

inline void clamp(const Vec& x, double lo, double hi, Vec& out) {
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] < lo ? lo : (x[i] > hi ? hi : x[i]);
}

inline double dot(const Vec& a, const Vec& b) {
  const std::size_t size = a.size();
  double total = 0.0;
  for (std::size_t lo = 0; lo < size; lo += kern::kReduceBlock) {
    const std::size_t hi = std::min(lo + kern::kReduceBlock, size);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    total += s;
  }
  return total;
}

inline double norm_sq(const Vec& x) { return dot(x, x); }

inline void group_shrink(const Vec& x, int group_size, double threshold,
                         Vec& out) {
  out.resize(x.size());
  const std::size_t num_groups = x.size() / group_size;
  for (std::size_t g = 0; g < num_groups; ++g) {
    double nsq = 0.0;
    for (int j = 0; j < group_size; ++j) {
      const double v = x[j * num_groups + g];
      nsq += v * v;
    }
    const double nrm = std::sqrt(nsq);
    const double f = nrm > threshold ? 1.0 - threshold / nrm : 0.0;
    for (int j = 0; j < group_size; ++j)
      out[j * num_groups + g] = f * x[j * num_groups + g];
  }
}

inline void grad_forward(const Vec& x, int width, int height, Vec& out) {
  const std::size_t wh = static_cast<std::size_t>(width) * height;
  out.resize(2 * wh);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      const std::size_t p = static_cast<std::size_t>(i) * width + j;
      out[p] = j + 1 < width ? x[p + 1] - x[p] : 0.0;
      out[wh + p] = i + 1 < height ? x[p + width] - x[p] : 0.0;
    }
  }
}

inline void grad_adjoint(const Vec& y, int width, int height, Vec& out) {
  const std::size_t wh = static_cast<std::size_t>(width) * height;
  out.resize(wh);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      const std::size_t p = static_cast<std::size_t>(i) * width + j;
      double v = 0.0;
      if (j + 1 < width) v -= y[p];
      if (j > 0) v += y[p - 1];
      if (i + 1 < height) v -= y[wh + p];
      if (i > 0) v += y[wh + p - width];
      out[p] = v;
    }
  }
}

inline void gaussian_field(std::uint64_t seed, std::size_t n, Vec& out) {
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = rng::gaussian(seed, i);
}

}  // namespace sps::ref
