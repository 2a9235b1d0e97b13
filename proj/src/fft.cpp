#include "sps/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace sps {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

// FFTW's planner is not thread-safe; plan once per size under a lock and
// execute through the thread-safe new-array interface. FFTW_ESTIMATE keeps
// plan selection independent of timing, FFTW_UNALIGNED lets the plans run on
// arbitrary user buffers.
PlanPair* plans_for(int width, int height) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PlanPair> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = registry[{width, height}];
  if (entry.fwd == nullptr) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    CVec a(n), b(n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    // FFTW's row count comes first.
    entry.fwd = fftw_plan_dft_2d(height, width, pa, pb, FFTW_FORWARD, flags);
    entry.inv = fftw_plan_dft_2d(height, width, pa, pb, FFTW_BACKWARD, flags);
    require(entry.fwd != nullptr && entry.inv != nullptr,
            "FFTW planning failed");
  }
  return &entry;
}

void run(fftw_plan plan, const CVec& in, CVec& out, std::size_t n) {
  out.resize(n);
  // Out-of-place c2c transforms do not touch the input.
  auto* pin =
      reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, pin, pout);
}

}  // namespace

Fft2d::Fft2d(int width, int height) : width_(width), height_(height) {
  require(width >= 1 && height >= 1, "Fft2d: dimensions must be positive");
  plans_ = plans_for(width, height);
}

void Fft2d::forward(const CVec& in, CVec& out) const {
  require_same_size(in.size(), size(), "Fft2d::forward");
  run(static_cast<PlanPair*>(plans_)->fwd, in, out, size());
}

void Fft2d::inverse(const CVec& in, CVec& out) const {
  require_same_size(in.size(), size(), "Fft2d::inverse");
  run(static_cast<PlanPair*>(plans_)->inv, in, out, size());
  const double s = 1.0 / static_cast<double>(size());
  for (auto& v : out) v *= s;
}

void Fft2d::forward_real(const Vec& in, CVec& out) const {
  require_same_size(in.size(), size(), "Fft2d::forward_real");
  CVec tmp(size());
  for (std::size_t i = 0; i < in.size(); ++i) tmp[i] = in[i];
  forward(tmp, out);
}

void Fft2d::inverse_real(const CVec& in, Vec& out, double* max_imag) const {
  CVec tmp;
  inverse(in, tmp);
  out.resize(size());
  double worst = 0.0;
  for (std::size_t i = 0; i < tmp.size(); ++i) {
    out[i] = tmp[i].real();
    const double im = std::abs(tmp[i].imag());
    if (im > worst) worst = im;
  }
  if (max_imag != nullptr) *max_imag = worst;
}

}  // namespace sps
