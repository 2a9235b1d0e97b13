#include "sps/linops.hpp"

#include <cmath>

#include "sps/kernels.hpp"

namespace sps {

DiscreteGradient::DiscreteGradient(int width, int height)
    : width_(width),
      height_(height),
      wh_(static_cast<std::size_t>(width) * height) {
  require(width >= 1 && height >= 1,
          "DiscreteGradient: dimensions must be positive");
}

void DiscreteGradient::apply(const Vec& x, Vec& out) const {
  require_same_size(x.size(), wh_, "DiscreteGradient::apply");
  kern::grad_forward(x, width_, height_, out);
}

void DiscreteGradient::apply_adjoint(const Vec& y, Vec& out) const {
  require_same_size(y.size(), 2 * wh_, "DiscreteGradient::apply_adjoint");
  kern::grad_adjoint(y, width_, height_, out);
}

FrequencyOperator::FrequencyOperator(int width, int height, CVec response)
    : width_(width), height_(height), fft_(width, height),
      response_(std::move(response)) {
  require_same_size(response_.size(), fft_.size(), "FrequencyOperator");
  require(is_conjugate_symmetric(width, height, response_),
          "FrequencyOperator: response is not conjugate-symmetric");
}

bool FrequencyOperator::is_conjugate_symmetric(int width, int height,
                                               const CVec& response,
                                               double tol) {
  if (response.size() != static_cast<std::size_t>(width) * height) return false;
  double scale = 0.0;
  for (const auto& v : response) scale = std::max(scale, std::abs(v));
  const double bound = tol * std::max(scale, 1.0);
  for (int f1 = 0; f1 < height; ++f1) {
    for (int f2 = 0; f2 < width; ++f2) {
      const std::size_t a = static_cast<std::size_t>(f1) * width + f2;
      const std::size_t b =
          static_cast<std::size_t>((height - f1) % height) * width +
          (width - f2) % width;
      if (std::abs(response[a] - std::conj(response[b])) > bound) return false;
    }
  }
  return true;
}

void FrequencyOperator::apply_response(const Vec& x, bool conjugate,
                                       Vec& out) const {
  require_same_size(x.size(), fft_.size(), "FrequencyOperator::apply");
  CVec spec, prod;
  fft_.forward_real(x, spec);
  if (conjugate)
    kern::spectrum_multiply_conj(response_, spec, prod);
  else
    kern::spectrum_multiply(response_, spec, prod);
  double max_imag = 0.0;
  fft_.inverse_real(prod, out, &max_imag);
  const double budget = 1e-10 * std::max(kern::norm(x), 1e-300);
  if (max_imag > budget)
    throw std::runtime_error(
        "FrequencyOperator: imaginary residue exceeds the real-output "
        "contract");
}

void FrequencyOperator::apply(const Vec& x, Vec& out) const {
  apply_response(x, /*conjugate=*/false, out);
}

void FrequencyOperator::apply_adjoint(const Vec& y, Vec& out) const {
  apply_response(y, /*conjugate=*/true, out);
}

double FrequencyOperator::max_response_sq() const {
  double m = 0.0;
  for (const auto& v : response_) m = std::max(m, std::norm(v));
  return m;
}

double estimate_norm_squared(const LinearOp& op, int iterations,
                             std::uint64_t seed) {
  require(iterations >= 1, "estimate_norm_squared: iterations must be >= 1");
  Vec b;
  kern::gaussian_field(seed, op.input_dim(), b);
  const double bn = kern::norm(b);
  if (bn == 0.0) return 0.0;
  kern::scale(b, 1.0 / bn);

  Vec mid(op.output_dim()), next(op.input_dim());
  double rayleigh = 0.0;
  for (int it = 0; it < iterations; ++it) {
    op.apply(b, mid);
    op.apply_adjoint(mid, next);
    rayleigh = kern::dot(b, next);  // = ||A b||^2 for unit b
    const double nn = kern::norm(next);
    if (nn == 0.0) return 0.0;  // b in the null space: zero operator in effect
    kern::scale(next, 1.0 / nn);
    std::swap(b, next);
  }
  return rayleigh;
}

}  // namespace sps
