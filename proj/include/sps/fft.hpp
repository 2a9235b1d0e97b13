#pragma once

#include "sps/common.hpp"

namespace sps {

/// 2D complex DFT backed by FFTW. Plans are created once per (width, height)
/// in a mutex-guarded registry with FFTW_ESTIMATE, so planning is
/// deterministic and execution is reentrant; forward is unnormalized and
/// inverse carries the 1/(width*height) factor.
class Fft2d {
 public:
  Fft2d(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return static_cast<std::size_t>(width_) * height_; }

  void forward(const CVec& in, CVec& out) const;
  void inverse(const CVec& in, CVec& out) const;

  /// forward() of a real vector.
  void forward_real(const Vec& in, CVec& out) const;
  /// Real part of inverse(); reports the largest |imaginary| seen, which must
  /// be noise-level for conjugate-symmetric spectra.
  void inverse_real(const CVec& in, Vec& out, double* max_imag = nullptr) const;

 private:
  int width_;
  int height_;
  void* plans_;  // shared per-size plan pair, owned by the registry
};

}  // namespace sps
