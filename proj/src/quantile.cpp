#include <algorithm>
#include <cmath>
#include <vector>

#include "basisrisk/errors.hpp"
#include "basisrisk/evaluation.hpp"
#include "basisrisk/parallel.hpp"

namespace basisrisk {

namespace {

double check_loss(const Vector<double>& resid, double tau) {
  double total = 0.0;
  for (Index i = 0; i < resid.size(); ++i) {
    const double u = resid[i];
    total += u * (tau - (u < 0.0 ? 1.0 : 0.0));
  }
  return total;
}

/// Minimizing intercept of sum rho_tau(r - a): the lower tau-quantile,
/// i.e. the ceil(tau * n)-th order statistic.
double best_intercept(const Vector<double>& resid, double tau) {
  const Index n = resid.size();
  Index k = static_cast<Index>(std::ceil(tau * static_cast<double>(n)));
  k = std::clamp<Index>(k, 1, n);
  std::vector<double> r(resid.data(), resid.data() + n);
  std::nth_element(r.begin(), r.begin() + (k - 1), r.end());
  return r[static_cast<std::size_t>(k - 1)];
}

/// Check loss at slope b with the intercept re-optimized.
double loss_at_slope(const Vector<double>& y, const Vector<double>& f,
                     double tau, double b) {
  const Vector<double> r = y - b * f;
  const double a = best_intercept(r, tau);
  return check_loss(r.array() - a, tau);
}

double enumerate_pairs(const Vector<double>& y, const Vector<double>& f,
                       double tau, double upper_bound) {
  const Index t = y.size();
  double best = upper_bound;
  for (Index s = 0; s < t; ++s) {
    for (Index u = s + 1; u < t; ++u) {
      if (f[s] == f[u]) continue;
      const double b = (y[s] - y[u]) / (f[s] - f[u]);
      const double a = y[s] - b * f[s];
      const double loss = check_loss(y.array() - a - b * f.array(), tau);
      if (loss < best) best = loss;
    }
  }
  return best;
}

/// Slope bracket containing every two-point line: extreme pairwise slopes
/// are attained between f-adjacent groups (intermediate points only average
/// slopes), so a sorted scan suffices.
std::pair<double, double> slope_bracket(const Vector<double>& y,
                                        const Vector<double>& f) {
  const Index t = y.size();
  std::vector<Index> order(static_cast<std::size_t>(t));
  for (Index i = 0; i < t; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return f[a] < f[b]; });
  struct Group {
    double f;
    double y_min;
    double y_max;
  };
  std::vector<Group> groups;
  for (Index idx : order) {
    if (!groups.empty() && groups.back().f == f[idx]) {
      groups.back().y_min = std::min(groups.back().y_min, y[idx]);
      groups.back().y_max = std::max(groups.back().y_max, y[idx]);
    } else {
      groups.push_back({f[idx], y[idx], y[idx]});
    }
  }
  double lo = 0.0, hi = 0.0;
  for (std::size_t g = 1; g < groups.size(); ++g) {
    const double gap = groups[g].f - groups[g - 1].f;
    hi = std::max(hi, (groups[g].y_max - groups[g - 1].y_min) / gap);
    lo = std::min(lo, (groups[g].y_min - groups[g - 1].y_max) / gap);
  }
  return {lo, hi};
}

/// Golden-section over the convex loss-in-slope profile.
double search_slope(const Vector<double>& y, const Vector<double>& f,
                    double tau, double v_null) {
  auto [lo, hi] = slope_bracket(y, f);
  if (lo == hi) return v_null;  // constant f is rejected upstream; belt only
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double g1 = loss_at_slope(y, f, tau, x1);
  double g2 = loss_at_slope(y, f, tau, x2);
  for (int it = 0; it < 160 && x1 < x2; ++it) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - kInvPhi * (hi - lo);
      g1 = loss_at_slope(y, f, tau, x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + kInvPhi * (hi - lo);
      g2 = loss_at_slope(y, f, tau, x2);
    }
  }
  double best = std::min(g1, g2);
  best = std::min(best, loss_at_slope(y, f, tau, lo));
  best = std::min(best, loss_at_slope(y, f, tau, hi));
  return best;
}

constexpr Index kEnumerationMaxT = 12;

}  // namespace

QuantileFit quantile_fit(const Vector<double>& y, const Vector<double>& f,
                         double tau) {
  if (y.size() != f.size())
    throw Error(ErrorKind::validation, "quantile_fit: length mismatch");
  if (!(tau > 0.0) || !(tau < 1.0))
    throw Error(ErrorKind::validation, "quantile_fit: tau must be in (0,1)");
  if (f.maxCoeff() == f.minCoeff())
    throw Error(ErrorKind::degenerate, "quantile_fit: constant index");

  QuantileFit fit;
  fit.tau = tau;
  const double a0 = best_intercept(y, tau);
  fit.v_null = check_loss(y.array() - a0, tau);

  if (y.size() <= kEnumerationMaxT) {
    fit.v_model = enumerate_pairs(y, f, tau, fit.v_null);
  } else {
    fit.v_model = std::min(fit.v_null, search_slope(y, f, tau, fit.v_null));
  }
  fit.pseudo_r2 = fit.v_null > 0.0 ? 1.0 - fit.v_model / fit.v_null : 0.0;
  return fit;
}

QuantileAggregate quantile_r2_bar(const YieldPanel& panel,
                                  const IndexSeries& index, double tau) {
  if (index.values.size() != panel.period_count())
    throw Error(ErrorKind::validation,
                "index length does not match the panel's period count");
  if (index.degenerate())
    throw Error(ErrorKind::degenerate,
                "index '" + index.kind + "' is constant");
  const Index n = panel.field_count();
  QuantileAggregate agg;
  agg.per_field.resize(static_cast<std::size_t>(n));
  parallel_for(n, [&](Index i) {
    agg.per_field[static_cast<std::size_t>(i)] =
        quantile_fit(panel.values().row(i).transpose(), index.values, tau);
  });
  double sum = 0.0, model_sum = 0.0, null_sum = 0.0;
  Index used = 0;
  for (const auto& fit : agg.per_field) {
    if (!fit.defined()) {
      ++agg.n_undefined;
      continue;
    }
    sum += fit.pseudo_r2;
    model_sum += fit.v_model;
    null_sum += fit.v_null;
    ++used;
  }
  if (used == 0)
    throw Error(ErrorKind::degenerate,
                "quantile_r2_bar: every field is constant");
  agg.r2q_bar = sum / static_cast<double>(used);
  agg.r2q_pooled = 1.0 - model_sum / null_sum;
  return agg;
}

}  // namespace basisrisk
