#pragma once

#include <string>
#include <vector>

#include "basisrisk/indices.hpp"
#include "basisrisk/moments.hpp"
#include "basisrisk/panel.hpp"
#include "basisrisk/types.hpp"

namespace basisrisk {

/// Per-field OLS of yields on an index.
struct FieldRegression {
  double alpha = 0.0;
  double beta = 0.0;
  double r2 = 0.0;       // NaN for zero-variance fields (0/0)
  double sst = 0.0;      // sum((y_t - mean(y))^2)
  double ssr = 0.0;      // residual sum of squares
  double resid_sd = 0.0; // sqrt(ssr / max(T-2, 1))
};

enum class WeightKind {
  zone_mean,
  subsample_mean,
  optimal_avg,    // w*:  argmax of the average R²
  optimal_total,  // w**: argmax of the variance-weighted R²
  custom,
};

struct IndexWeights {
  Vector<double> weights;
  WeightKind kind = WeightKind::custom;
};

enum class RiskMetric { average, total };

/// The zonal/design split of basis risk for one index within one zone.
///
/// zonal + design = total holds bitwise (total is stored as their sum).
/// r2_bar and r2_total are always filled; the risk fields are derived from
/// whichever of the two the chosen metric uses, against the matching optimal
/// value (lambda-1 share of C for `average`, of Sigma for `total`).
struct RiskDecomposition {
  std::string index_kind;
  RiskMetric metric = RiskMetric::average;
  double r2_bar = 0.0;      // unweighted mean of per-field R² (non-degenerate)
  double r2_bar_opt = 0.0;  // metric optimum attained by w* / w**
  double zonal_risk = 0.0;  // 1 - r2_bar_opt
  double design_risk = 0.0; // r2_bar_opt - attained
  double total_risk = 0.0;  // zonal_risk + design_risk
  Vector<double> per_field_r2;  // NaN on zero-variance fields
  double r2_total = 0.0;    // variance-weighted R², 1 - sum(ssr)/sum(sst)
  Index n_degenerate = 0;

  double attained() const {
    return metric == RiskMetric::average ? r2_bar : r2_total;
  }
};

// -- matrix-form building blocks (population or sample moments) --

/// Slopes of each field on the zone mean: beta = N * Sigma 1 / (1' Sigma 1).
template <typename Derived>
Vector<typename Derived::Scalar> beta_vector_from_sigma(
    const Eigen::MatrixBase<Derived>& sigma) {
  using Scalar = typename Derived::Scalar;
  const Index n = sigma.rows();
  const Vector<Scalar> row_sums = sigma.rowwise().sum();
  const Scalar total = row_sums.sum();  // 1' Sigma 1
  if (!(total > Scalar(0)))
    throw Error(ErrorKind::degenerate,
                "zone mean has zero variance (1'S1 <= 0)");
  return static_cast<Scalar>(n) * row_sums / total;
}

/// R² matrix for the index f = Yw:
///   D^{-1/2} Sigma w (w' Sigma w)^{-1} w' Sigma D^{-1/2}.
/// Only the diagonal has a direct interpretation (per-field R²).
template <typename DerivedS, typename DerivedW>
Matrix<typename DerivedS::Scalar> r2_matrix_from_sigma(
    const Eigen::MatrixBase<DerivedS>& sigma,
    const Eigen::MatrixBase<DerivedW>& w) {
  using Scalar = typename DerivedS::Scalar;
  const Vector<Scalar> sw = sigma * w;
  const Scalar denom = w.dot(sw);  // w' Sigma w
  if (!(denom > Scalar(0)))
    throw Error(ErrorKind::degenerate, "index has zero variance (w'Sw <= 0)");
  Vector<Scalar> inv_sd(sigma.rows());
  for (Index i = 0; i < sigma.rows(); ++i) {
    const Scalar v = sigma(i, i);
    inv_sd[i] = v > Scalar(0) ? Scalar(1) / std::sqrt(v) : Scalar(0);
  }
  const Vector<Scalar> scaled = inv_sd.cwiseProduct(sw);
  return scaled * scaled.transpose() / denom;
}

/// Diagonal of the R² matrix as row operations (no N x N storage):
/// R²_i = (Sigma w)_i² / (sigma_i² w' Sigma w); NaN where sigma_i² = 0.
template <typename DerivedS, typename DerivedW>
Vector<typename DerivedS::Scalar> r2_diag_from_sigma(
    const Eigen::MatrixBase<DerivedS>& sigma,
    const Eigen::MatrixBase<DerivedW>& w) {
  using Scalar = typename DerivedS::Scalar;
  const Vector<Scalar> sw = sigma * w;
  const Scalar denom = w.dot(sw);
  if (!(denom > Scalar(0)))
    throw Error(ErrorKind::degenerate, "index has zero variance (w'Sw <= 0)");
  Vector<Scalar> out(sigma.rows());
  for (Index i = 0; i < sigma.rows(); ++i) {
    const Scalar v = sigma(i, i);
    out[i] = v > Scalar(0)
                 ? sw[i] * sw[i] / (v * denom)
                 : std::numeric_limits<Scalar>::quiet_NaN();
  }
  return out;
}

/// Average R² of f = Yw over positive-variance fields, from moments alone.
template <typename DerivedS, typename DerivedW>
typename DerivedS::Scalar r2_bar_from_sigma(
    const Eigen::MatrixBase<DerivedS>& sigma,
    const Eigen::MatrixBase<DerivedW>& w) {
  using Scalar = typename DerivedS::Scalar;
  const Vector<Scalar> diag = r2_diag_from_sigma(sigma, w);
  Scalar sum = Scalar(0);
  Index count = 0;
  for (Index i = 0; i < diag.size(); ++i) {
    if (!std::isnan(diag[i])) {
      sum += diag[i];
      ++count;
    }
  }
  if (count == 0)
    throw Error(ErrorKind::degenerate, "all fields have zero variance");
  return sum / static_cast<Scalar>(count);
}

/// Variance-weighted R² of f = Yw: |Sigma w|² / (w' Sigma w * tr(Sigma)).
template <typename DerivedS, typename DerivedW>
typename DerivedS::Scalar r2_total_from_sigma(
    const Eigen::MatrixBase<DerivedS>& sigma,
    const Eigen::MatrixBase<DerivedW>& w) {
  using Scalar = typename DerivedS::Scalar;
  const Vector<Scalar> sw = sigma * w;
  const Scalar denom = w.dot(sw);
  if (!(denom > Scalar(0)))
    throw Error(ErrorKind::degenerate, "index has zero variance (w'Sw <= 0)");
  const Scalar trace = sigma.trace();
  if (!(trace > Scalar(0)))
    throw Error(ErrorKind::degenerate, "all fields have zero variance");
  return sw.squaredNorm() / (denom * trace);
}

// -- panel-level operations --

/// Per-field OLS of y_it on the index; R²_i is the squared Pearson
/// correlation. Throws Error{degenerate} on a constant index.
std::vector<FieldRegression> regress_fields(const YieldPanel& panel,
                                            const IndexSeries& index);

Vector<double> beta_vector(const MomentSummary<double>& moments);

Matrix<double> r2_matrix(const MomentSummary<double>& moments,
                         const IndexWeights& weights);

/// w* = D^{-1/2} v1(C); zero weight on zero-variance fields.
IndexWeights optimal_weights_avg(const MomentSummary<double>& moments);

/// w** = v1(Sigma); zero weight on zero-variance fields.
IndexWeights optimal_weights_total(const MomentSummary<double>& moments);

/// Thin-path variants that never form the N x N moment matrices.
IndexWeights optimal_weights_avg(
    const YieldPanel& panel,
    VarianceDenominator denominator = VarianceDenominator::unbiased);
IndexWeights optimal_weights_total(
    const YieldPanel& panel,
    VarianceDenominator denominator = VarianceDenominator::unbiased);

/// f = Yw as a series on the panel's period axis.
IndexSeries index_from_weights(const YieldPanel& panel,
                               const IndexWeights& weights);

/// Best attainable metric value for the zone: the lambda-1 share of C
/// (average metric) or Sigma (total metric), via the Gram path when N > T.
double optimal_r2(const YieldPanel& panel, RiskMetric metric,
                  VarianceDenominator denominator = VarianceDenominator::unbiased);

RiskDecomposition decompose(
    const YieldPanel& panel, const IndexSeries& index, RiskMetric metric,
    VarianceDenominator denominator = VarianceDenominator::unbiased);

RiskDecomposition decompose(
    const YieldPanel& panel, const IndexWeights& weights, RiskMetric metric,
    VarianceDenominator denominator = VarianceDenominator::unbiased);

}  // namespace basisrisk
