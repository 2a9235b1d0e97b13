#include "sps/prox.hpp"

#include <cmath>

#include "sps/kernels.hpp"
#include "sps/rng.hpp"

namespace sps {

Vec prox_box(const Vec& x, const BoxConstraint& box) {
  require(box.lo <= box.hi, "prox_box: invalid box");
  Vec out;
  kern::clamp(x, box.lo, box.hi, out);
  return out;
}

Vec prox_group_l2(const Vec& x, double gamma, const GroupShrinkSpec& spec) {
  require(gamma > 0.0, "prox_group_l2: gamma must be positive");
  require(spec.weight >= 0.0, "prox_group_l2: weight must be nonnegative");
  Vec out;
  kern::group_shrink(x, spec.group_size, gamma * spec.weight, out);
  return out;
}

Vec prox_conjugate(const ProxMap& prox_primal, double sigma, const Vec& x) {
  require(sigma > 0.0, "prox_conjugate: sigma must be positive");
  Vec scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] / sigma;
  Vec inner = prox_primal(scaled, 1.0 / sigma);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - sigma * inner[i];
  return out;
}

Vec perturbed_prox(const ProxMap& exact, const ProxPerturbation& pert,
                   std::int64_t n, const Vec& x, double gamma,
                   const BoxConstraint* reproject) {
  Vec p = exact(x, gamma);
  if (pert.mode == ProxPerturbation::Mode::off) return p;

  const double radius =
      pert.alpha(n) * kern::norm(x) + pert.beta(n);
  if (radius <= 0.0) return p;

  // Direction keyed to (n, contents of x): reruns reproduce the same inexact
  // evaluation without any shared RNG state.
  const std::uint64_t dir_seed =
      rng::derive(pert.seed ^ rng::content_hash(x), static_cast<std::uint64_t>(n));
  Vec dir;
  kern::gaussian_field(dir_seed, p.size(), dir);
  const double dn = kern::norm(dir);
  if (dn == 0.0) return p;
  kern::add_scaled(p, radius / dn, dir);
  if (reproject != nullptr) kern::clamp_inplace(p, reproject->lo, reproject->hi);
  return p;
}

}  // namespace sps
