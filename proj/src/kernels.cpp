#include "sps/kernels.hpp"

#include <cmath>
#include <cstring>

#include "sps/rng.hpp"

namespace sps::kern {

namespace {
inline std::int64_t ssize_of(const Vec& v) {
  return static_cast<std::int64_t>(v.size());
}
}  // namespace

void forward_point(const Vec& x, double step, const Vec& drift, Vec& out) {
  require_same_size(x.size(), drift.size(), "forward_point");
  out.resize(x.size());
  const std::int64_t n = ssize_of(x);
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = x[i] - step * drift[i];
}

void relax_update(Vec& x, double lambda, const Vec& cand) {
  require_same_size(x.size(), cand.size(), "relax_update");
  const std::int64_t n = ssize_of(x);
  if (lambda == 1.0) {
    // Exact handoff: x + 1*(c - x) would reintroduce rounding.
    std::memcpy(x.data(), cand.data(), x.size() * sizeof(double));
    return;
  }
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) x[i] = x[i] + lambda * (cand[i] - x[i]);
}

void add(Vec& y, const Vec& x) {
  require_same_size(y.size(), x.size(), "add");
  const std::int64_t n = ssize_of(y);
#pragma omp parallel for if (y.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) y[i] += x[i];
}

void add_scaled(Vec& y, double a, const Vec& x) {
  require_same_size(y.size(), x.size(), "add_scaled");
  const std::int64_t n = ssize_of(y);
#pragma omp parallel for if (y.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void sub(const Vec& a, const Vec& b, Vec& out) {
  require_same_size(a.size(), b.size(), "sub");
  out.resize(a.size());
  const std::int64_t n = ssize_of(a);
#pragma omp parallel for if (a.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void scale(Vec& x, double a) {
  const std::int64_t n = ssize_of(x);
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) x[i] *= a;
}

void clamp(const Vec& x, double lo, double hi, Vec& out) {
  out.resize(x.size());
  const std::int64_t n = ssize_of(x);
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = x[i] < lo ? lo : (x[i] > hi ? hi : x[i]);
}

void clamp_inplace(Vec& x, double lo, double hi) {
  const std::int64_t n = ssize_of(x);
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    x[i] = x[i] < lo ? lo : (x[i] > hi ? hi : x[i]);
}

namespace {

// Fixed-order blocked reduction: partials per 1024-element block, combined
// left to right. The block structure, not the thread count, fixes the
// floating-point association.
template <typename BlockFn>
double blocked_reduce(std::size_t size, BlockFn&& block_sum) {
  const std::size_t nblocks = (size + kReduceBlock - 1) / kReduceBlock;
  if (nblocks <= 1) return size == 0 ? 0.0 : block_sum(0, size);
  std::vector<double> partial(nblocks);
  const std::int64_t nb = static_cast<std::int64_t>(nblocks);
#pragma omp parallel for if (size >= kParallelCutoff) schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = std::min(lo + kReduceBlock, size);
    partial[b] = block_sum(lo, hi);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
  require_same_size(a.size(), b.size(), "dot");
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
  });
}

double norm_sq(const Vec& x) { return dot(x, x); }

double norm(const Vec& x) { return std::sqrt(norm_sq(x)); }

double dist_sq(const Vec& a, const Vec& b) {
  require_same_size(a.size(), b.size(), "dist_sq");
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return s;
  });
}

bool all_finite(const Vec& x) {
  const std::int64_t n = ssize_of(x);
  bool ok = true;
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static) \
    reduction(&& : ok)
  for (std::int64_t i = 0; i < n; ++i) ok = ok && std::isfinite(x[i]);
  return ok;
}

void group_shrink(const Vec& x, int group_size, double threshold, Vec& out) {
  require(group_size >= 1, "group_shrink: group_size must be positive");
  if (x.size() % static_cast<std::size_t>(group_size) != 0)
    throw DimensionError("group_shrink: length not divisible by group size");
  out.resize(x.size());
  const std::int64_t num_groups = ssize_of(x) / group_size;
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t g = 0; g < num_groups; ++g) {
    double nsq = 0.0;
    for (int j = 0; j < group_size; ++j) {
      const double v = x[static_cast<std::size_t>(j) * num_groups + g];
      nsq += v * v;
    }
    const double nrm = std::sqrt(nsq);
    const double f = nrm > threshold ? 1.0 - threshold / nrm : 0.0;
    for (int j = 0; j < group_size; ++j) {
      const std::size_t idx = static_cast<std::size_t>(j) * num_groups + g;
      out[idx] = f * x[idx];
    }
  }
}

void group_ball_project(const Vec& x, int group_size, double radius,
                        Vec& out) {
  require(group_size >= 1, "group_ball_project: group_size must be positive");
  if (x.size() % static_cast<std::size_t>(group_size) != 0)
    throw DimensionError(
        "group_ball_project: length not divisible by group size");
  out.resize(x.size());
  const std::int64_t num_groups = ssize_of(x) / group_size;
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t g = 0; g < num_groups; ++g) {
    double nsq = 0.0;
    for (int j = 0; j < group_size; ++j) {
      const double v = x[static_cast<std::size_t>(j) * num_groups + g];
      nsq += v * v;
    }
    const double nrm = std::sqrt(nsq);
    const double f = nrm > radius ? radius / nrm : 1.0;
    for (int j = 0; j < group_size; ++j) {
      const std::size_t idx = static_cast<std::size_t>(j) * num_groups + g;
      out[idx] = f * x[idx];
    }
  }
}

void grad_forward(const Vec& x, int width, int height, Vec& out) {
  const std::size_t wh = static_cast<std::size_t>(width) * height;
  require_same_size(x.size(), wh, "grad_forward");
  out.resize(2 * wh);
#pragma omp parallel for if (wh >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < height; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * width;
    for (int j = 0; j < width; ++j) {
      const std::size_t p = row + j;
      out[p] = j + 1 < width ? x[p + 1] - x[p] : 0.0;
      out[wh + p] = i + 1 < height ? x[p + width] - x[p] : 0.0;
    }
  }
}

void grad_adjoint(const Vec& y, int width, int height, Vec& out) {
  const std::size_t wh = static_cast<std::size_t>(width) * height;
  require_same_size(y.size(), 2 * wh, "grad_adjoint");
  out.resize(wh);
#pragma omp parallel for if (wh >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < height; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * width;
    for (int j = 0; j < width; ++j) {
      const std::size_t p = row + j;
      double v = 0.0;
      // Horizontal plane: output j reads -h(j) + h(j-1); last column of the
      // forward map is structurally zero so it never contributes.
      if (j + 1 < width) v -= y[p];
      if (j > 0) v += y[p - 1];
      // Vertical plane.
      if (i + 1 < height) v -= y[wh + p];
      if (i > 0) v += y[wh + p - width];
      out[p] = v;
    }
  }
}

void gaussian_field(std::uint64_t seed, std::size_t n, Vec& out) {
  out.resize(n);
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for if (n >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < sn; ++i)
    out[i] = rng::gaussian(seed, static_cast<std::uint64_t>(i));
}

void spectrum_multiply(const CVec& response, const CVec& in, CVec& out) {
  require_same_size(response.size(), in.size(), "spectrum_multiply");
  out.resize(in.size());
  const std::int64_t n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for if (in.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = response[i] * in[i];
}

void spectrum_multiply_conj(const CVec& response, const CVec& in, CVec& out) {
  require_same_size(response.size(), in.size(), "spectrum_multiply_conj");
  out.resize(in.size());
  const std::int64_t n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for if (in.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = std::conj(response[i]) * in[i];
}

void spectrum_scale(CVec& x, double a) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for if (x.size() >= kParallelCutoff) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace sps::kern
