#include "sps/schedules.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sps {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PowerLawSchedule PowerLawSchedule::constant(double c) {
  require(c >= 0.0, "schedule: constant must be nonnegative");
  return {c, 0.0, 1.0, PowerLawForm::pure};
}

PowerLawSchedule PowerLawSchedule::pure_decay(double amplitude,
                                              double exponent) {
  require(amplitude >= 0.0, "schedule: amplitude must be nonnegative");
  return {amplitude, exponent, 1.0, PowerLawForm::pure};
}

PowerLawSchedule PowerLawSchedule::saturating(double exponent, double pivot) {
  require(exponent > 0.0, "saturating schedule: exponent must be positive");
  require(pivot > 0.0, "saturating schedule: pivot must be positive");
  return {1.0, exponent, pivot, PowerLawForm::saturating};
}

PowerLawSchedule PowerLawSchedule::power_growth(double exponent) {
  require(exponent > 0.0, "power_growth schedule: exponent must be positive");
  return {1.0, exponent, 1.0, PowerLawForm::power_growth};
}

double PowerLawSchedule::operator()(std::int64_t n) const {
  switch (form) {
    case PowerLawForm::pure: {
      if (exponent == 0.0) return amplitude;
      const double base = static_cast<double>(n < 1 ? 1 : n);
      return amplitude * std::pow(base, -exponent);
    }
    case PowerLawForm::saturating: {
      const double r = static_cast<double>(n) / pivot;
      return amplitude / (1.0 + std::pow(r, exponent));
    }
    case PowerLawForm::power_growth:
      return std::ceil(std::pow(static_cast<double>(n), exponent));
  }
  return 0.0;
}

bool PowerLawSchedule::is_constant() const {
  if (amplitude == 0.0) return true;
  return form == PowerLawForm::pure && exponent == 0.0;
}

double PowerLawSchedule::limit() const {
  if (amplitude == 0.0) return 0.0;
  switch (form) {
    case PowerLawForm::pure:
      if (exponent > 0.0) return 0.0;
      if (exponent == 0.0) return amplitude;
      return kInf;
    case PowerLawForm::saturating:
      return 0.0;
    case PowerLawForm::power_growth:
      return kInf;
  }
  return 0.0;
}

double PowerLawSchedule::tail_sup() const {
  const double lim = limit();
  // All supported forms are eventually monotone, so the tail sup is the limit
  // for decreasing forms and +inf for growing ones.
  return lim;
}

double PowerLawSchedule::tail_inf() const { return limit(); }

bool PowerLawSchedule::sum_converges() const {
  if (amplitude == 0.0) return true;
  switch (form) {
    case PowerLawForm::pure:
    case PowerLawForm::saturating:
      // saturating decays like (n/pivot)^(-p); same p-series criterion.
      return exponent > 1.0;
    case PowerLawForm::power_growth:
      return false;
  }
  return false;
}

bool PowerLawSchedule::sqrt_sum_converges() const {
  if (amplitude == 0.0) return true;
  switch (form) {
    case PowerLawForm::pure:
    case PowerLawForm::saturating:
      return exponent > 2.0;
    case PowerLawForm::power_growth:
      return false;
  }
  return false;
}

BatchSchedule::BatchSchedule(PowerLawSchedule shape) : shape_(shape) {
  memo_.push_back(1);  // m_0
}

std::int64_t BatchSchedule::at(std::int64_t n) const {
  require(n >= 0, "batch schedule: index must be nonnegative");
  std::lock_guard<std::mutex> lock(memo_mutex_);
  while (static_cast<std::int64_t>(memo_.size()) <= n) {
    const std::int64_t k = static_cast<std::int64_t>(memo_.size());
    const auto raw = static_cast<std::int64_t>(shape_(k));
    memo_.push_back(std::max(memo_.back() + 1, raw));
  }
  return memo_[static_cast<std::size_t>(n)];
}

bool check_power_law_summability(double exponent, SeriesKind kind) {
  const double effective =
      kind == SeriesKind::sum ? exponent : exponent / 2.0;
  return effective > 1.0;
}

FbConditionReport validate_fb_conditions(const PowerLawSchedule& gamma,
                                         const PowerLawSchedule& lambda,
                                         const PowerLawSchedule& tau,
                                         double vartheta) {
  require(vartheta > 0.0, "validate_fb_conditions: vartheta must be positive");
  FbConditionReport r;

  r.gamma_inf_positive = gamma.tail_inf() > 0.0;
  if (!r.gamma_inf_positive)
    r.failures.push_back("step sizes are not bounded away from zero");

  const double tau_sup = tau.tail_sup();
  r.tau_sup_finite = std::isfinite(tau_sup);
  if (!r.tau_sup_finite)
    r.failures.push_back("relative-variance sequence is unbounded");

  const double step_sup = std::isfinite(tau_sup) && std::isfinite(gamma.tail_sup())
                              ? (1.0 + tau_sup) * gamma.tail_sup()
                              : kInf;
  r.step_bound_holds = step_sup < 2.0 * vartheta;
  if (!r.step_bound_holds)
    r.failures.push_back("(1+tau_n)*gamma_n does not stay below 2*vartheta");

  if (lambda.tail_inf() > 0.0) {
    r.relaxation_branch = RelaxationBranch::inf_lambda_positive;
  } else if (gamma.is_constant() && tau.sum_converges() &&
             !lambda.sum_converges() && lambda.amplitude > 0.0) {
    r.relaxation_branch = RelaxationBranch::constant_gamma_summable_tau;
  } else {
    r.relaxation_branch = RelaxationBranch::none;
    r.failures.push_back(
        "relaxations neither stay bounded away from zero nor combine a "
        "constant step with summable tau and divergent sum of lambda");
  }

  r.overall = r.gamma_inf_positive && r.tau_sup_finite && r.step_bound_holds &&
              r.relaxation_branch != RelaxationBranch::none;
  return r;
}

double pd_stepsize_margin(const PdStepsizeConfig& cfg) {
  require(cfg.rho > 0.0, "pd stepsizes: rho must be positive");
  require(cfg.mu > 0.0, "pd stepsizes: mu must be positive");
  require(cfg.sigmas.size() == cfg.operator_norm_squares.size() &&
              !cfg.sigmas.empty(),
          "pd stepsizes: sigma and norm lists must match and be nonempty");
  double dual = 0.0;
  for (std::size_t k = 0; k < cfg.sigmas.size(); ++k) {
    require(cfg.sigmas[k] > 0.0, "pd stepsizes: sigma_k must be positive");
    require(cfg.operator_norm_squares[k] >= 0.0,
            "pd stepsizes: norm squares must be nonnegative");
    dual += cfg.sigmas[k] * cfg.operator_norm_squares[k];
  }
  return (1.0 / cfg.rho - dual) * cfg.mu;
}

bool validate_pd_stepsizes(const PdStepsizeConfig& cfg) {
  return pd_stepsize_margin(cfg) > 0.5;
}

bool validate_online_schedules(double delta, double kappa) {
  require(delta > 0.0, "online schedules: delta must be positive");
  return kappa > 1.0 - delta && kappa <= 1.0 && kappa >= 0.0;
}

std::string to_string(const FbConditionReport& r) {
  std::ostringstream os;
  os << "step sizes bounded away from zero: "
     << (r.gamma_inf_positive ? "yes" : "NO") << "\n"
     << "relative variance bounded: " << (r.tau_sup_finite ? "yes" : "NO")
     << "\n"
     << "step bound (1+tau)*gamma < 2*vartheta: "
     << (r.step_bound_holds ? "yes" : "NO") << "\n"
     << "relaxation branch: ";
  switch (r.relaxation_branch) {
    case RelaxationBranch::inf_lambda_positive:
      os << "inf lambda > 0";
      break;
    case RelaxationBranch::constant_gamma_summable_tau:
      os << "constant gamma, summable tau, divergent sum of lambda";
      break;
    case RelaxationBranch::none:
      os << "NONE";
      break;
  }
  os << "\noverall: " << (r.overall ? "PASS" : "FAIL") << "\n";
  for (const auto& f : r.failures) os << "  - " << f << "\n";
  return os.str();
}

}  // namespace sps
