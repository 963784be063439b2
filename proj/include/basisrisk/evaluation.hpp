#pragma once

#include <string>
#include <vector>

#include "basisrisk/indices.hpp"
#include "basisrisk/panel.hpp"
#include "basisrisk/types.hpp"

namespace basisrisk {

/// Area-yield indemnity scheme: I_t = max(trigger * mean(zbar) - zbar_t, 0),
/// priced at the fair premium (the mean indemnity).
struct InsuranceScheme {
  double trigger = 0.9;
  double premium = 0.0;
  Vector<double> indemnities;

  bool never_pays() const { return indemnities.maxCoeff() == 0.0; }
};

InsuranceScheme build_scheme(const Vector<double>& zone_means,
                             double trigger = 0.9);

/// Iso-elastic (CRRA) utility of a positive lottery. theta = 1 is the
/// logarithmic branch. Throws Error{degenerate} on nonpositive outcomes.
double certainty_equivalent(const Vector<double>& outcomes, double theta);

struct UtilityEvaluation {
  double crra_coef = 1.5;
  Vector<double> ce_insured;    // per field; NaN when excluded
  Vector<double> ce_uninsured;  // per field; NaN when excluded
  std::vector<Index> excluded;  // fields with a nonpositive yield argument
};

/// Certainty equivalents with and without the index scheme. Post-insurance
/// yields are y_it + I_t - premium; a field with any nonpositive argument on
/// either side is excluded and reported (CRRA is undefined at 0).
UtilityEvaluation evaluate_eu(const YieldPanel& panel,
                              const InsuranceScheme& scheme,
                              double crra_coef = 1.5);

struct FarmEquivalentResult {
  double coverage = 0.0;  // individual trigger with matching CE
  bool saturated_low = false;
  bool saturated_high = false;
  bool monotone = true;       // CE grid was nondecreasing in the trigger
  bool excluded = false;      // CE undefined for this field
};

/// The individual-insurance trigger whose fair-premium scheme gives this
/// field the same CE as the zone-index scheme. Bisection on [0, 1.5] to
/// |dCE| < 1e-8; a grid pre-scan checks monotonicity and the largest root
/// is returned when the CE curve is non-monotone.
FarmEquivalentResult farm_equivalent_coverage(const Vector<double>& field_yields,
                                              const InsuranceScheme& scheme,
                                              double crra_coef = 1.5);

struct QuantileFit {
  double tau = 0.3;
  double v_model = 0.0;  // minimized check loss of y on (1, f)
  double v_null = 0.0;   // check loss of the intercept-only fit
  double pseudo_r2 = 0.0;

  bool defined() const { return v_null > 0.0; }
};

/// Exact check-loss minimum for one field. Breakpoint enumeration (every
/// two-point line) for T <= 12; above that a convex line search over the
/// slope with an exact local polish.
QuantileFit quantile_fit(const Vector<double>& y, const Vector<double>& f,
                         double tau);

struct QuantileAggregate {
  std::vector<QuantileFit> per_field;
  double r2q_bar = 0.0;     // mean over fields of per-field pseudo R²
  double r2q_pooled = 0.0;  // 1 - sum(v_model) / sum(v_null)
  Index n_undefined = 0;    // fields with v_null = 0 (constant series)
};

QuantileAggregate quantile_r2_bar(const YieldPanel& panel,
                                  const IndexSeries& index, double tau = 0.3);

struct SimulationConfig {
  Index horizon = 30;
  std::uint64_t rng_seed = 0;
  double zone_mean_mu = 0.0;  // fitted mean of the zone-average series
  double zone_mean_sd = 0.0;
  Vector<double> alpha;     // per-field regression intercepts
  Vector<double> beta;      // per-field slopes on the zone mean
  Vector<double> resid_sd;  // per-field residual sd
};

/// Fits regression parameters and the zone-mean distribution from a panel.
SimulationConfig fit_simulation_config(const YieldPanel& panel,
                                       Index horizon = 30,
                                       std::uint64_t rng_seed = 0);

struct SimulationResult {
  YieldPanel panel;
  Index truncated = 0;     // draws clamped at zero
  double truncation_rate() const {
    return static_cast<double>(truncated) /
           static_cast<double>(panel.field_count() * panel.period_count());
  }
};

/// Simulates `horizon` periods: zone means drawn normal with the fitted
/// moments, fields drawn normal around alpha_i + beta_i * mean, clamped at
/// zero (clamped draws are counted). Field i uses stream
/// (seed, "sim:<field_id>"), so output is independent of evaluation order.
SimulationResult simulate_yields(const YieldPanel& panel,
                                 const SimulationConfig& config);

enum class MeasurementMode { pooled, temporal, spatial };

struct MeasurementErrorFit {
  MeasurementMode mode = MeasurementMode::pooled;
  double rho = 0.0;    // correlation (pooled) or averaged per-unit/period
  double gamma = 0.0;  // slope (pooled) or averaged
  double p_gamma_eq_1 = 0.0;
  Index n_used = 0;              // regressions entering the averages
  std::vector<std::string> dropped;  // units/periods with < 3 observations
};

/// Conditional-bias regression of predicted on ground-truth aggregates.
/// pooled: one OLS over all cells; temporal: per-unit OLS over time,
/// averaged, with the gamma=1 test from a unit-demeaned pooled regression;
/// spatial: the same across periods. Inference uses HC1-robust errors.
MeasurementErrorFit measurement_error_fit(const YieldPanel& truth,
                                          const YieldPanel& predicted,
                                          MeasurementMode mode);

struct OneFactorSpec {
  Index n = 100;
  Index t = 4;
  double level_lo = 10.0;      // alpha_i ~ U(level_lo, level_hi)
  double level_hi = 10.0;
  double loading_lo = 0.5;     // beta_i ~ U(loading_lo, loading_hi)
  double loading_hi = 1.5;
  double noise_sd_lo = 1.0;    // sigma_i ~ U(noise_sd_lo, noise_sd_hi)
  double noise_sd_hi = 1.0;
  double factor_sd = 1.0;      // F_t ~ N(0, factor_sd)
  std::uint64_t seed = 0;
};

struct OneFactorPanel {
  YieldPanel panel;
  Vector<double> alpha;
  Vector<double> loading;
  Vector<double> noise_sd;
  Vector<double> factor;  // realized factor path
};

/// Synthetic y_it = alpha_i + beta_i F_t + eps_it with the true parameters
/// returned alongside for oracle tests.
OneFactorPanel generate_one_factor(const OneFactorSpec& spec);

}  // namespace basisrisk
