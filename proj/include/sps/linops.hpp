#pragma once

#include <cstdint>
#include <memory>

#include "sps/common.hpp"
#include "sps/fft.hpp"

namespace sps {

/// Abstract real linear operator with an exact adjoint.
class LinearOp {
 public:
  virtual ~LinearOp() = default;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t output_dim() const = 0;
  virtual void apply(const Vec& x, Vec& out) const = 0;
  virtual void apply_adjoint(const Vec& y, Vec& out) const = 0;

  Vec apply(const Vec& x) const {
    Vec out;
    apply(x, out);
    return out;
  }
  Vec apply_adjoint(const Vec& y) const {
    Vec out;
    apply_adjoint(y, out);
    return out;
  }
};

/// Forward-difference image gradient with replicate (Neumann) boundary,
/// mapping W*H pixels to two stacked planes (horizontal, vertical).
class DiscreteGradient : public LinearOp {
 public:
  DiscreteGradient(int width, int height);
  std::size_t input_dim() const override { return wh_; }
  std::size_t output_dim() const override { return 2 * wh_; }
  void apply(const Vec& x, Vec& out) const override;
  void apply_adjoint(const Vec& y, Vec& out) const override;
  int width() const { return width_; }
  int height() const { return height_; }

 private:
  int width_;
  int height_;
  std::size_t wh_;
};

/// Pointwise multiplication in the 2D DFT domain. The response must be
/// conjugate-symmetric so the operator maps real images to real images; the
/// imaginary residue of every apply is checked against that contract.
class FrequencyOperator : public LinearOp {
 public:
  FrequencyOperator(int width, int height, CVec response);

  std::size_t input_dim() const override { return fft_.size(); }
  std::size_t output_dim() const override { return fft_.size(); }
  void apply(const Vec& x, Vec& out) const override;
  void apply_adjoint(const Vec& y, Vec& out) const override;

  const CVec& response() const { return response_; }
  double max_response_sq() const;
  int width() const { return width_; }
  int height() const { return height_; }

  static bool is_conjugate_symmetric(int width, int height, const CVec& response,
                                     double tol = 1e-12);

 private:
  void apply_response(const Vec& x, bool conjugate, Vec& out) const;

  int width_;
  int height_;
  Fft2d fft_;
  CVec response_;
};

/// Power-iteration estimate of ||op||^2 (largest eigenvalue of A*A). The
/// Rayleigh quotient is nondecreasing in the iteration count and never
/// exceeds the true norm; callers that need a safe upper bound apply their
/// own padding factor.
double estimate_norm_squared(const LinearOp& op, int iterations,
                             std::uint64_t seed);

}  // namespace sps
