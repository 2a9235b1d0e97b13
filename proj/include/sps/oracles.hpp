#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "sps/degradation.hpp"
#include "sps/fft.hpp"
#include "sps/schedules.hpp"

namespace sps {

/// Random-access source of (operator, observation) records: either an
/// unbounded synthetic stream derived from a master seed, or a finite replay
/// of a manifest. Distinct records can be materialized concurrently.
class ObservationStream {
 public:
  ObservationStream(DegradationConfig cfg, Image reference);
  ObservationStream(StreamManifest manifest, Image reference);

  const DegradationConfig& config() const { return cfg_; }
  const Image& reference() const { return reference_; }
  /// Number of available records, or -1 when unbounded.
  std::int64_t limit() const { return limit_; }
  ObservationRecord record(std::int64_t n) const;

 private:
  DegradationConfig cfg_;
  Image reference_;
  std::vector<ObservationRecord> fixed_records_;
  std::int64_t limit_;
};

/// Growing-mini-batch estimate of the smooth-term gradient: the mean of the
/// per-record gradients over the first m_{n+1} records, summed in record
/// order with a fixed block structure (bit-reproducible for any thread
/// count). recompute_all re-folds every record each call, the cost model the
/// estimator is specified under; incremental keeps running aggregates of the
/// per-record affine pieces and must agree with recompute_all to 1e-10.
class EmpiricalGradientOracle {
 public:
  enum class CachePolicy { recompute_all, incremental };

  EmpiricalGradientOracle(std::shared_ptr<const ObservationStream> stream,
                          std::shared_ptr<BatchSchedule> batches,
                          CachePolicy policy = CachePolicy::recompute_all);

  /// u_n evaluated at x (uses the first m_{n+1} records).
  Vec gradient(const Vec& x, std::int64_t n);
  /// Mean gradient over the first `batch` records.
  Vec gradient_with_batch(const Vec& x, std::int64_t batch);
  std::int64_t batch_for(std::int64_t n) const { return batches_->at(n + 1); }
  CachePolicy policy() const { return policy_; }

 private:
  struct RecordPiece {
    std::vector<std::uint32_t> kept;  // kept frequency bins
    CVec masked_z_spec;               // response * F(z) at those bins
  };

  void ensure_records(std::int64_t m);
  RecordPiece build_piece(std::int64_t index) const;

  std::shared_ptr<const ObservationStream> stream_;
  std::shared_ptr<BatchSchedule> batches_;
  CachePolicy policy_;
  Fft2d fft_;
  CVec nominal_;       // real-valued blur response
  Vec response_sq_;    // |response|^2 per bin
  CVec ref_spec_;      // F(reference), shared across record builds
  std::vector<RecordPiece> pieces_;            // recompute_all cache
  Vec mask_count_;                             // incremental aggregates
  CVec z_spec_sum_;
  std::int64_t cached_ = 0;
};

/// Closed-form gradient of h(x) = 0.5*E||K0 x - z0||^2 for the Bernoulli-mask
/// model: a Fourier-diagonal map with symbol keep_prob*|response|^2 applied
/// to x - reference.
class ExactGradientOracle {
 public:
  ExactGradientOracle(DegradationConfig cfg, Image reference);
  Vec operator()(const Vec& x) const;
  /// Lipschitz constant of the gradient: keep_prob * max|response|^2.
  double lipschitz() const { return lipschitz_; }
  const Vec& symbol() const { return symbol_; }

 private:
  DegradationConfig cfg_;
  Image reference_;
  Fft2d fft_;
  Vec symbol_;
  double lipschitz_;
};

/// One-call convenience wrapper.
Vec exact_gradient(const DegradationConfig& cfg, const Image& reference,
                   const Vec& x);

/// Controlled bias/variance contamination of a gradient: a bias of norm
/// exactly bias(n), plus zero-mean Gaussian noise scaled so its expected
/// squared norm equals relative_variance*||grad - ref_grad||^2 + variance(n).
struct GradientErrorInjector {
  PowerLawSchedule bias = PowerLawSchedule::constant(0.0);
  PowerLawSchedule variance = PowerLawSchedule::constant(0.0);
  double relative_variance = 0.0;
  std::uint64_t seed = 0;
};

Vec inject_gradient_error(const GradientErrorInjector& injector,
                          const Vec& true_grad, const Vec* ref_grad_at_solution,
                          std::int64_t n);

/// Synthetic stream oracle for the quadratic benchmark g(x) = 0.5*||x-c||^2:
/// sample gradient i is (x - c) + noise_i with i.i.d. Gaussian noise, and the
/// batch-m estimate averages the first m noise draws (prefix sums cached).
class QuadraticStreamOracle {
 public:
  QuadraticStreamOracle(Vec target, double noise_sigma, std::uint64_t seed,
                        std::shared_ptr<BatchSchedule> batches);
  Vec gradient(const Vec& x, std::int64_t n);
  const Vec& target() const { return target_; }

 private:
  Vec target_;
  double sigma_;
  std::uint64_t seed_;
  std::shared_ptr<BatchSchedule> batches_;
  Vec noise_prefix_;  // running sum of draws 0..cached_-1
  std::int64_t cached_ = 0;
};

}  // namespace sps
