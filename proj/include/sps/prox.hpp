#pragma once

#include <cstdint>
#include <functional>

#include "sps/common.hpp"
#include "sps/schedules.hpp"

namespace sps {

/// Exact proximity map of some gamma*f: (x, gamma) -> argmin f(y) + ||x-y||^2/(2*gamma).
using ProxMap = std::function<Vec(const Vec&, double)>;

/// Componentwise box [lo, hi]; prox of its indicator is the clamp.
struct BoxConstraint {
  double lo = 0.0;
  double hi = 255.0;
};

inline BoxConstraint make_box(double lo, double hi) {
  require(lo <= hi, "box constraint: lo must not exceed hi");
  return {lo, hi};
}

Vec prox_box(const Vec& x, const BoxConstraint& box);

/// Per-group Euclidean shrinkage spec: group_size components per group (2 for
/// an isotropic gradient-pair penalty), scaled by `weight`.
struct GroupShrinkSpec {
  int group_size = 2;
  double weight = 0.0;
};

/// prox of gamma * weight * sum_g ||x_g||_2 on the stacked-plane layout
/// (component j of group i at j*num_groups + i).
Vec prox_group_l2(const Vec& x, double gamma, const GroupShrinkSpec& spec);

/// prox of sigma*g* obtained from the prox of g via the Moreau decomposition:
/// x - sigma * prox_{g/sigma}(x/sigma).
Vec prox_conjugate(const ProxMap& prox_primal, double sigma, const Vec& x);

/// Synthetic inexact-prox model: adds a deterministic pseudo-random direction
/// whose norm is exactly alpha_n*||x|| + beta_n, then (for indicator
/// constraints) re-projects into the box so feasibility is preserved.
struct ProxPerturbation {
  enum class Mode { off, scaled_shift };
  PowerLawSchedule alpha = PowerLawSchedule::constant(0.0);
  PowerLawSchedule beta = PowerLawSchedule::constant(0.0);
  Mode mode = Mode::off;
  std::uint64_t seed = 0;
};

Vec perturbed_prox(const ProxMap& exact, const ProxPerturbation& pert,
                   std::int64_t n, const Vec& x, double gamma,
                   const BoxConstraint* reproject = nullptr);

}  // namespace sps
