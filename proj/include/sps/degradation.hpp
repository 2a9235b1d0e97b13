#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sps/common.hpp"
#include "sps/image.hpp"
#include "sps/linops.hpp"

namespace sps {

/// Observation model parameters: a uniform blur whose frequency response is
/// randomly subsampled bin by bin, plus additive white Gaussian noise.
struct DegradationConfig {
  int width = 0;
  int height = 0;
  int blur_size = 5;
  double keep_prob = 0.3;
  double noise_sigma = 5.0;
  std::uint64_t master_seed = 0;
};

void validate(const DegradationConfig& cfg);

/// Seeds for one observation; (operator, noise) are reconstructed from them,
/// so a record is a complete, immutable description of the draw.
struct ObservationRecord {
  std::int64_t index = 0;
  std::uint64_t mask_seed = 0;
  std::uint64_t noise_seed = 0;
};

ObservationRecord record_for(const DegradationConfig& cfg, std::int64_t n);

/// Frequency response of the centered, unit-sum blur kernel: a separable
/// product of Dirichlet kernels. Real, DC gain exactly 1, |response| <= 1.
CVec nominal_blur_response(const DegradationConfig& cfg);
FrequencyOperator nominal_blur_operator(const DegradationConfig& cfg);

/// Bernoulli keep/drop mask, one byte per frequency bin. Bins are sampled on
/// a half-spectrum fundamental domain and mirrored, so mirror pairs share
/// their draw and the masked response stays conjugate-symmetric.
std::vector<std::uint8_t> sample_mask(const DegradationConfig& cfg,
                                      std::uint64_t mask_seed);

/// One realization of the stochastic operator for record n.
FrequencyOperator sample_operator(const DegradationConfig& cfg, std::int64_t n);

Vec sample_noise(const DegradationConfig& cfg, std::uint64_t noise_seed);

/// z for an explicit record (the replay path: seeds may come from a manifest).
Vec materialize_observation(const DegradationConfig& cfg, const Image& reference,
                            const ObservationRecord& rec);

/// z_n: blur realization applied to the reference image plus noise.
std::pair<ObservationRecord, Vec> sample_observation(
    const DegradationConfig& cfg, const Image& reference, std::int64_t n);

/// Persistent record stream. Text format: `key=value` header lines (width,
/// height, blurSize, keepProb, noiseSigma, masterSeed, count) followed by one
/// `n maskSeed noiseSeed` line per record.
struct StreamManifest {
  DegradationConfig cfg;
  std::vector<ObservationRecord> records;
};

void write_manifest(const std::string& path, const StreamManifest& manifest);
StreamManifest read_manifest(const std::string& path);

}  // namespace sps
