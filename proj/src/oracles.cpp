#include "sps/oracles.hpp"

#include <cmath>

#include "sps/kernels.hpp"
#include "sps/rng.hpp"

namespace sps {

ObservationStream::ObservationStream(DegradationConfig cfg, Image reference)
    : cfg_(cfg), reference_(std::move(reference)), limit_(-1) {
  validate(cfg_);
  require_same_size(reference_.size(),
                    static_cast<std::size_t>(cfg_.width) * cfg_.height,
                    "ObservationStream");
}

ObservationStream::ObservationStream(StreamManifest manifest, Image reference)
    : cfg_(manifest.cfg),
      reference_(std::move(reference)),
      fixed_records_(std::move(manifest.records)),
      limit_(static_cast<std::int64_t>(fixed_records_.size())) {
  validate(cfg_);
  require_same_size(reference_.size(),
                    static_cast<std::size_t>(cfg_.width) * cfg_.height,
                    "ObservationStream");
}

ObservationRecord ObservationStream::record(std::int64_t n) const {
  require(n >= 0, "ObservationStream: record index must be nonnegative");
  if (limit_ >= 0) {
    if (n >= limit_)
      throw std::runtime_error(
          "observation stream exhausted: record " + std::to_string(n) +
          " requested but the manifest holds " + std::to_string(limit_));
    return fixed_records_[static_cast<std::size_t>(n)];
  }
  return record_for(cfg_, n);
}

EmpiricalGradientOracle::EmpiricalGradientOracle(
    std::shared_ptr<const ObservationStream> stream,
    std::shared_ptr<BatchSchedule> batches, CachePolicy policy)
    : stream_(std::move(stream)),
      batches_(std::move(batches)),
      policy_(policy),
      fft_(stream_->config().width, stream_->config().height),
      nominal_(nominal_blur_response(stream_->config())) {
  response_sq_.resize(nominal_.size());
  for (std::size_t i = 0; i < nominal_.size(); ++i)
    response_sq_[i] = std::norm(nominal_[i]);
  fft_.forward_real(stream_->reference().pix, ref_spec_);
  mask_count_.assign(nominal_.size(), 0.0);
  z_spec_sum_.assign(nominal_.size(), {0.0, 0.0});
}

EmpiricalGradientOracle::RecordPiece EmpiricalGradientOracle::build_piece(
    std::int64_t index) const {
  const auto& cfg = stream_->config();
  const ObservationRecord rec = stream_->record(index);
  const auto keep = sample_mask(cfg, rec.mask_seed);

  // z = blur realization applied to the reference, plus noise. Uses the
  // cached reference spectrum; bit-identical to materialize_observation.
  CVec zspec(nominal_.size());
  for (std::size_t j = 0; j < nominal_.size(); ++j) {
    const std::complex<double> r =
        keep[j] ? nominal_[j] : std::complex<double>(0.0, 0.0);
    zspec[j] = r * ref_spec_[j];
  }
  Vec z;
  fft_.inverse_real(zspec, z);
  if (cfg.noise_sigma > 0.0) kern::add(z, sample_noise(cfg, rec.noise_seed));

  fft_.forward_real(z, zspec);
  RecordPiece piece;
  for (std::size_t j = 0; j < keep.size(); ++j) {
    if (!keep[j]) continue;
    piece.kept.push_back(static_cast<std::uint32_t>(j));
    piece.masked_z_spec.push_back(nominal_[j] * zspec[j]);
  }
  return piece;
}

void EmpiricalGradientOracle::ensure_records(std::int64_t m) {
  if (m <= cached_) return;
  const std::int64_t first = cached_;
  std::vector<RecordPiece> fresh(static_cast<std::size_t>(m - first));
  const std::int64_t count = m - first;
#pragma omp parallel for schedule(dynamic, 8) if (count > 16)
  for (std::int64_t i = 0; i < count; ++i)
    fresh[static_cast<std::size_t>(i)] = build_piece(first + i);
  for (auto& piece : fresh) {
    if (policy_ == CachePolicy::incremental) {
      // Running aggregates of the affine pieces, accumulated in record order.
      for (std::size_t k = 0; k < piece.kept.size(); ++k) {
        mask_count_[piece.kept[k]] += 1.0;
        z_spec_sum_[piece.kept[k]] += piece.masked_z_spec[k];
      }
    } else {
      pieces_.push_back(std::move(piece));
    }
  }
  cached_ = m;
}

Vec EmpiricalGradientOracle::gradient(const Vec& x, std::int64_t n) {
  return gradient_with_batch(x, batches_->at(n + 1));
}

Vec EmpiricalGradientOracle::gradient_with_batch(const Vec& x,
                                                 std::int64_t batch) {
  require(batch >= 1, "empirical gradient: batch must be >= 1");
  require_same_size(x.size(), nominal_.size(), "empirical gradient");
  ensure_records(batch);

  CVec x_spec;
  fft_.forward_real(x, x_spec);
  // Per-record gradient spectrum: response^2*F(x) - response*F(z) on the
  // record's kept bins. response^2*F(x) is shared by all records.
  CVec forced(x_spec.size());
  for (std::size_t j = 0; j < x_spec.size(); ++j)
    forced[j] = response_sq_[j] * x_spec[j];

  CVec acc(x_spec.size(), {0.0, 0.0});
  if (policy_ == CachePolicy::incremental) {
    if (batch < cached_)
      throw std::logic_error(
          "incremental cache policy requires nondecreasing batch sizes");
    for (std::size_t j = 0; j < acc.size(); ++j)
      acc[j] = mask_count_[j] * forced[j] - z_spec_sum_[j];
  } else {
    // Fixed 64-record blocks: block partials in parallel, combined in block
    // order, so the fold is identical for any thread count.
    constexpr std::int64_t kBlock = 64;
    const std::int64_t nblocks = (batch + kBlock - 1) / kBlock;
    std::vector<CVec> partial(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(static) if (nblocks > 1)
    for (std::int64_t b = 0; b < nblocks; ++b) {
      CVec local(acc.size(), {0.0, 0.0});
      const std::int64_t lo = b * kBlock;
      const std::int64_t hi = std::min(lo + kBlock, batch);
      for (std::int64_t i = lo; i < hi; ++i) {
        const auto& piece = pieces_[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < piece.kept.size(); ++k) {
          const std::uint32_t j = piece.kept[k];
          local[j] += forced[j] - piece.masked_z_spec[k];
        }
      }
      partial[static_cast<std::size_t>(b)] = std::move(local);
    }
    for (const auto& p : partial)
      for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += p[j];
  }

  kern::spectrum_scale(acc, 1.0 / static_cast<double>(batch));
  Vec out;
  fft_.inverse_real(acc, out);
  return out;
}

ExactGradientOracle::ExactGradientOracle(DegradationConfig cfg, Image reference)
    : cfg_(cfg),
      reference_(std::move(reference)),
      fft_(cfg.width, cfg.height) {
  validate(cfg_);
  require_same_size(reference_.size(), fft_.size(), "ExactGradientOracle");
  const CVec nominal = nominal_blur_response(cfg_);
  symbol_.resize(nominal.size());
  double max_sq = 0.0;
  for (std::size_t i = 0; i < nominal.size(); ++i) {
    const double sq = std::norm(nominal[i]);
    symbol_[i] = cfg_.keep_prob * sq;
    max_sq = std::max(max_sq, sq);
  }
  lipschitz_ = cfg_.keep_prob * max_sq;
}

Vec ExactGradientOracle::operator()(const Vec& x) const {
  require_same_size(x.size(), fft_.size(), "exact gradient");
  Vec diff;
  kern::sub(x, reference_.pix, diff);
  CVec spec;
  fft_.forward_real(diff, spec);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= symbol_[j];
  Vec out;
  fft_.inverse_real(spec, out);
  return out;
}

Vec exact_gradient(const DegradationConfig& cfg, const Image& reference,
                   const Vec& x) {
  return ExactGradientOracle(cfg, reference)(x);
}

Vec inject_gradient_error(const GradientErrorInjector& injector,
                          const Vec& true_grad,
                          const Vec* ref_grad_at_solution, std::int64_t n) {
  Vec out = true_grad;
  const auto un = static_cast<std::uint64_t>(n);

  const double bias_norm = injector.bias(n);
  if (bias_norm > 0.0) {
    Vec dir;
    kern::gaussian_field(rng::derive(injector.seed, un, 11), out.size(), dir);
    const double dn = kern::norm(dir);
    if (dn > 0.0) kern::add_scaled(out, bias_norm / dn, dir);
  }

  double bound = injector.variance(n);
  if (injector.relative_variance > 0.0 && ref_grad_at_solution != nullptr)
    bound += injector.relative_variance *
             kern::dist_sq(true_grad, *ref_grad_at_solution);
  if (bound > 0.0) {
    Vec noise;
    kern::gaussian_field(rng::derive(injector.seed, un, 12), out.size(), noise);
    // Scale so E||noise||^2 equals the bound exactly.
    kern::add_scaled(out, std::sqrt(bound / static_cast<double>(out.size())),
                     noise);
  }
  return out;
}

QuadraticStreamOracle::QuadraticStreamOracle(
    Vec target, double noise_sigma, std::uint64_t seed,
    std::shared_ptr<BatchSchedule> batches)
    : target_(std::move(target)),
      sigma_(noise_sigma),
      seed_(seed),
      batches_(std::move(batches)),
      noise_prefix_(target_.size(), 0.0) {
  require(noise_sigma >= 0.0, "quadratic oracle: sigma must be nonnegative");
}

Vec QuadraticStreamOracle::gradient(const Vec& x, std::int64_t n) {
  require_same_size(x.size(), target_.size(), "quadratic oracle");
  const std::int64_t m = batches_->at(n + 1);
  while (cached_ < m) {
    const std::uint64_t draw_seed =
        rng::derive(seed_, static_cast<std::uint64_t>(cached_), 21);
    for (std::size_t d = 0; d < noise_prefix_.size(); ++d)
      noise_prefix_[d] += sigma_ * rng::gaussian(draw_seed, d);
    ++cached_;
  }
  Vec out(x.size());
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t d = 0; d < out.size(); ++d)
    out[d] = (x[d] - target_[d]) + noise_prefix_[d] * inv_m;
  return out;
}

}  // namespace sps
