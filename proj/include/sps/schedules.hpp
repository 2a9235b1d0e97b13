#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "sps/common.hpp"

namespace sps {

/// Parametric scalar sequences shared by both solvers. Three closed forms:
///   pure:         amplitude * n^(-exponent)            (n = 0 evaluates at 1)
///   saturating:   amplitude / (1 + (n/pivot)^exponent)
///   power_growth: ceil(n^exponent)                      (integer-valued)
enum class PowerLawForm { pure, saturating, power_growth };

struct PowerLawSchedule {
  double amplitude = 1.0;
  double exponent = 0.0;
  double pivot = 1.0;
  PowerLawForm form = PowerLawForm::pure;

  static PowerLawSchedule constant(double c);
  static PowerLawSchedule pure_decay(double amplitude, double exponent);
  static PowerLawSchedule saturating(double exponent, double pivot);
  static PowerLawSchedule power_growth(double exponent);

  double operator()(std::int64_t n) const;

  bool is_constant() const;
  /// Limit value as n -> infinity (may be 0 or +infinity).
  double limit() const;
  /// Largest value the tail of the sequence attains, i.e. limsup.
  double tail_sup() const;
  /// Smallest tail value, i.e. liminf.
  double tail_inf() const;
  /// True iff sum_n s_n converges (p-series test on the closed form).
  bool sum_converges() const;
  /// True iff sum_n sqrt(s_n) converges.
  bool sqrt_sum_converges() const;
};

/// Strictly increasing integer batch sizes m_0 < m_1 < ...; m_0 is clamped to
/// 1 and each step enforces m_n >= m_{n-1} + 1 on top of the closed form.
class BatchSchedule {
 public:
  explicit BatchSchedule(PowerLawSchedule shape);
  /// m_n.
  std::int64_t at(std::int64_t n) const;

 private:
  PowerLawSchedule shape_;
  mutable std::vector<std::int64_t> memo_;
  mutable std::mutex memo_mutex_;
};

/// p-series verdict for a pure power law c * n^(-p).
enum class SeriesKind { sum, sum_of_sqrt };
bool check_power_law_summability(double exponent, SeriesKind kind);

/// Which alternative of the relaxation hypothesis holds.
enum class RelaxationBranch { none, inf_lambda_positive, constant_gamma_summable_tau };

/// Outcome of the forward-backward step/relaxation conditions. The sup/inf
/// style bounds are checked on the sequence tails (a finite prefix violating
/// them only shifts the effective start of the iteration).
struct FbConditionReport {
  bool gamma_inf_positive = false;
  bool tau_sup_finite = false;
  bool step_bound_holds = false;  // limsup (1+tau_n)*gamma_n < 2*vartheta
  RelaxationBranch relaxation_branch = RelaxationBranch::none;
  bool overall = false;
  std::vector<std::string> failures;  // which clause failed, human-readable
};

FbConditionReport validate_fb_conditions(const PowerLawSchedule& gamma,
                                         const PowerLawSchedule& lambda,
                                         const PowerLawSchedule& tau,
                                         double vartheta);

/// Primal-dual step-size data: primal step rho, one (sigma_k, ||L_k||^2) pair
/// per composite block, and mu = 1/Lipschitz(grad h).
struct PdStepsizeConfig {
  double rho = 0.0;
  std::vector<double> sigmas;
  std::vector<double> operator_norm_squares;
  double mu = 0.0;
};

/// Margin of the step-size condition: (1/rho - sum sigma_k*||L_k||^2) * mu.
double pd_stepsize_margin(const PdStepsizeConfig& cfg);
/// True iff the margin exceeds 1/2.
bool validate_pd_stepsizes(const PdStepsizeConfig& cfg);

/// Online-schedule compatibility: batch growth n^(1+delta) admits relaxation
/// decay n^(-kappa) iff kappa lies in ]1-delta, 1] intersected with [0, 1].
bool validate_online_schedules(double delta, double kappa);

std::string to_string(const FbConditionReport& report);

}  // namespace sps
