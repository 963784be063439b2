#include "basisrisk/decomposition.hpp"

#include <cmath>
#include <limits>

#include "basisrisk/parallel.hpp"

namespace basisrisk {

std::vector<FieldRegression> regress_fields(const YieldPanel& panel,
                                            const IndexSeries& index) {
  const Index n = panel.field_count();
  const Index t = panel.period_count();
  if (index.values.size() != t)
    throw Error(ErrorKind::validation,
                "index length does not match the panel's period count");
  if (index.degenerate())
    throw Error(ErrorKind::degenerate,
                "index '" + index.kind + "' is constant");
  const Vector<double>& f = index.values;
  const double f_mean = f.mean();
  const Vector<double> fc = f.array() - f_mean;
  const double sxx = fc.squaredNorm();
  if (!(sxx > 0.0))
    throw Error(ErrorKind::degenerate,
                "index '" + index.kind + "' has zero variance");

  std::vector<FieldRegression> out(static_cast<std::size_t>(n));
  const auto& values = panel.values();
  parallel_for(n, [&](Index i) {
    FieldRegression reg;
    const double y_mean = values.row(i).mean();
    const Vector<double> yc = values.row(i).transpose().array() - y_mean;
    reg.sst = yc.squaredNorm();
    const double sxy = yc.dot(fc);
    reg.beta = sxy / sxx;
    reg.alpha = y_mean - reg.beta * f_mean;
    reg.ssr = (yc - reg.beta * fc).squaredNorm();
    reg.r2 = reg.sst > 0.0 ? (sxy * sxy) / (sxx * reg.sst)
                           : std::numeric_limits<double>::quiet_NaN();
    reg.resid_sd = std::sqrt(reg.ssr / static_cast<double>(std::max<Index>(
                                           t - 2, 1)));
    out[static_cast<std::size_t>(i)] = reg;
  });
  return out;
}

Vector<double> beta_vector(const MomentSummary<double>& moments) {
  return beta_vector_from_sigma(moments.sigma);
}

Matrix<double> r2_matrix(const MomentSummary<double>& moments,
                         const IndexWeights& weights) {
  return r2_matrix_from_sigma(moments.sigma, weights.weights);
}

namespace {

IndexWeights weights_from_eigvec(const Vector<double>& eigvec,
                                 const std::vector<Index>& kept, Index n,
                                 const Vector<double>* inv_sd,
                                 WeightKind kind) {
  Vector<double> w = Vector<double>::Zero(n);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double scale = inv_sd ? (*inv_sd)[static_cast<Index>(k)] : 1.0;
    w[kept[k]] = eigvec[static_cast<Index>(k)] * scale;
  }
  return IndexWeights{std::move(w), kind};
}

}  // namespace

IndexWeights optimal_weights_avg(const MomentSummary<double>& moments) {
  if (moments.n_effective() == 0)
    throw Error(ErrorKind::degenerate, "all fields have zero variance");
  const EigenSummary<double> eig = top_eigen(moments.corr);
  Vector<double> w(moments.n);
  for (Index i = 0; i < moments.n; ++i) {
    w[i] = moments.var_diag[i] > 0.0
               ? eig.first_eigenvector[i] / std::sqrt(moments.var_diag[i])
               : 0.0;
  }
  return IndexWeights{std::move(w), WeightKind::optimal_avg};
}

IndexWeights optimal_weights_total(const MomentSummary<double>& moments) {
  if (moments.n_effective() == 0)
    throw Error(ErrorKind::degenerate, "all fields have zero variance");
  const EigenSummary<double> eig = top_eigen(moments.sigma);
  Vector<double> w = eig.first_eigenvector;
  for (Index i : moments.degenerate) w[i] = 0.0;
  w.normalize();
  normalize_sign(w);
  return IndexWeights{std::move(w), WeightKind::optimal_total};
}

IndexWeights optimal_weights_avg(const YieldPanel& panel,
                                 VarianceDenominator denominator) {
  std::vector<Index> kept;
  const Matrix<double> z =
      standardized_rows(panel.values(), denominator, &kept);
  const double dof = denominator_value(denominator, panel.period_count());
  const EigenSummary<double> eig = top_eigen_rows(z, dof);
  // rescale by 1/sd: rows of z are already unit-variance, so the per-field
  // weight is v_k / sd_k with sd recomputed from the raw panel
  Vector<double> inv_sd(static_cast<Index>(kept.size()));
  const Matrix<double> x = centered_rows(panel.values());
  for (std::size_t k = 0; k < kept.size(); ++k)
    inv_sd[static_cast<Index>(k)] =
        1.0 / std::sqrt(x.row(kept[k]).squaredNorm() / dof);
  return weights_from_eigvec(eig.first_eigenvector, kept,
                             panel.field_count(), &inv_sd,
                             WeightKind::optimal_avg);
}

IndexWeights optimal_weights_total(const YieldPanel& panel,
                                   VarianceDenominator denominator) {
  const Matrix<double> x = centered_rows(panel.values());
  const double dof = denominator_value(denominator, panel.period_count());
  const EigenSummary<double> eig = top_eigen_rows(x, dof);
  Vector<double> w = eig.first_eigenvector;
  for (Index i = 0; i < x.rows(); ++i)
    if (!(x.row(i).squaredNorm() > 0.0)) w[i] = 0.0;
  w.normalize();
  normalize_sign(w);
  return IndexWeights{std::move(w), WeightKind::optimal_total};
}

IndexSeries index_from_weights(const YieldPanel& panel,
                               const IndexWeights& weights) {
  if (weights.weights.size() != panel.field_count())
    throw Error(ErrorKind::validation,
                "weight vector length does not match the field count");
  if (!weights.weights.allFinite())
    throw Error(ErrorKind::validation, "weights contain non-finite entries");
  IndexSeries series;
  series.values = panel.values().transpose() * weights.weights;
  series.source = IndexSource::output_based;
  switch (weights.kind) {
    case WeightKind::zone_mean: series.kind = "zone_mean"; break;
    case WeightKind::subsample_mean: series.kind = "subsample_mean"; break;
    case WeightKind::optimal_avg: series.kind = "optimal_avg"; break;
    case WeightKind::optimal_total: series.kind = "optimal_total"; break;
    case WeightKind::custom: series.kind = "custom"; break;
  }
  return series;
}

double optimal_r2(const YieldPanel& panel, RiskMetric metric,
                  VarianceDenominator denominator) {
  const EigenMetric em = metric == RiskMetric::average
                             ? EigenMetric::correlation
                             : EigenMetric::covariance;
  return top_eigen(panel, em, denominator).top_share;
}

RiskDecomposition decompose(const YieldPanel& panel, const IndexSeries& index,
                            RiskMetric metric,
                            VarianceDenominator denominator) {
  const auto regs = regress_fields(panel, index);
  RiskDecomposition d;
  d.index_kind = index.kind;
  d.metric = metric;
  d.per_field_r2.resize(panel.field_count());
  double r2_sum = 0.0;
  double sst_sum = 0.0;
  double ssr_sum = 0.0;
  Index n_ok = 0;
  for (Index i = 0; i < panel.field_count(); ++i) {
    const auto& reg = regs[static_cast<std::size_t>(i)];
    d.per_field_r2[i] = reg.r2;
    sst_sum += reg.sst;
    ssr_sum += reg.ssr;
    if (!std::isnan(reg.r2)) {
      r2_sum += reg.r2;
      ++n_ok;
    }
  }
  d.n_degenerate = panel.field_count() - n_ok;
  if (n_ok == 0 || !(sst_sum > 0.0))
    throw Error(ErrorKind::degenerate, "all fields have zero variance");
  d.r2_bar = r2_sum / static_cast<double>(n_ok);
  d.r2_total = 1.0 - ssr_sum / sst_sum;
  d.r2_bar_opt = optimal_r2(panel, metric, denominator);
  d.zonal_risk = 1.0 - d.r2_bar_opt;
  d.design_risk = d.r2_bar_opt - d.attained();
  d.total_risk = d.zonal_risk + d.design_risk;
  return d;
}

RiskDecomposition decompose(const YieldPanel& panel,
                            const IndexWeights& weights, RiskMetric metric,
                            VarianceDenominator denominator) {
  return decompose(panel, index_from_weights(panel, weights), metric,
                   denominator);
}

}  // namespace basisrisk
