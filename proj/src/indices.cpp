#include "basisrisk/indices.hpp"

#include <algorithm>
#include <cmath>

#include "basisrisk/decomposition.hpp"
#include "basisrisk/parallel.hpp"
#include "basisrisk/rng.hpp"

namespace basisrisk {

IndexSeries zone_mean_index(const YieldPanel& panel) {
  IndexSeries series;
  series.values = panel.values().colwise().mean().transpose();
  series.kind = "zone_mean";
  series.source = IndexSource::output_based;
  return series;
}

IndexSeries subsample_mean_index(const YieldPanel& panel, Index size,
                                 std::uint64_t rng_seed) {
  if (size < 1 || size > panel.field_count())
    throw Error(ErrorKind::size,
                "subsample size " + std::to_string(size) +
                    " out of range for N=" +
                    std::to_string(panel.field_count()));
  Rng rng(rng_seed, "subsample_mean");
  const auto rows = rng.sample_without_replacement(panel.field_count(), size);
  IndexSeries series;
  series.values = Vector<double>::Zero(panel.period_count());
  for (Index i : rows) series.values += panel.values().row(i).transpose();
  series.values /= static_cast<double>(size);
  series.kind = "subsample_mean";
  series.source = IndexSource::output_based;
  return series;
}

std::vector<ExperimentRow> subsample_experiment(
    const YieldPanel& panel, const std::vector<Index>& sizes,
    Index replications, std::uint64_t rng_seed) {
  for (Index m : sizes)
    if (m < 1 || m > panel.field_count())
      throw Error(ErrorKind::size,
                  "subsample size " + std::to_string(m) +
                      " out of range for N=" +
                      std::to_string(panel.field_count()));
  if (replications < 1)
    throw Error(ErrorKind::size, "replications must be >= 1");

  const IndexSeries mean_index = zone_mean_index(panel);
  const RiskDecomposition mean_risk =
      decompose(panel, mean_index, RiskMetric::average);

  const Index total = static_cast<Index>(sizes.size()) * replications;
  std::vector<ExperimentRow> rows(static_cast<std::size_t>(total) + 2);
  parallel_for(total, [&](Index k) {
    const Index size = sizes[static_cast<std::size_t>(k / replications)];
    const Index rep = k % replications;
    Rng rng(rng_seed, "experiment:" + std::to_string(size) + ":" +
                          std::to_string(rep));
    const auto picked =
        rng.sample_without_replacement(panel.field_count(), size);
    IndexSeries f;
    f.values = Vector<double>::Zero(panel.period_count());
    for (Index i : picked) f.values += panel.values().row(i).transpose();
    f.values /= static_cast<double>(size);
    f.kind = "subsample_mean";
    ExperimentRow row;
    row.kind = "subsample";
    row.size = size;
    row.replication = rep;
    row.r2_bar = decompose(panel, f, RiskMetric::average).r2_bar;
    rows[static_cast<std::size_t>(k)] = row;
  });
  ExperimentRow ref_mean;
  ref_mean.kind = "zone_mean";
  ref_mean.r2_bar = mean_risk.r2_bar;
  ExperimentRow ref_opt;
  ref_opt.kind = "optimal";
  ref_opt.r2_bar = mean_risk.r2_bar_opt;
  rows[static_cast<std::size_t>(total)] = ref_mean;
  rows[static_cast<std::size_t>(total) + 1] = ref_opt;
  return rows;
}

namespace {

bool split_period(const std::string& label, const std::string& panel_period,
                  std::string* token) {
  if (label.size() <= panel_period.size() + 1) return false;
  if (label.compare(0, panel_period.size(), panel_period) != 0) return false;
  const char sep = label[panel_period.size()];
  if (sep != '-' && sep != '_' && sep != ':' && sep != '/') return false;
  *token = label.substr(panel_period.size() + 1);
  return true;
}

}  // namespace

std::optional<IndexSeries> align_external(
    const ExternalSeries& series, const std::vector<std::string>& panel_periods,
    TemporalAgg agg, const std::vector<std::string>& window,
    std::string* why_missing) {
  Vector<double> sums = Vector<double>::Zero(
      static_cast<Index>(panel_periods.size()));
  Vector<double> counts = Vector<double>::Zero(
      static_cast<Index>(panel_periods.size()));
  for (std::size_t r = 0; r < series.periods.size(); ++r) {
    const std::string& label = series.periods[r];
    // exact matches win over prefix matches
    bool matched = false;
    for (std::size_t p = 0; p < panel_periods.size() && !matched; ++p) {
      if (label == panel_periods[p]) {
        sums[static_cast<Index>(p)] += series.values[static_cast<Index>(r)];
        counts[static_cast<Index>(p)] += 1.0;
        matched = true;
      }
    }
    for (std::size_t p = 0; p < panel_periods.size() && !matched; ++p) {
      std::string token;
      if (split_period(label, panel_periods[p], &token)) {
        matched = true;
        if (window.empty() ||
            std::find(window.begin(), window.end(), token) != window.end()) {
          sums[static_cast<Index>(p)] += series.values[static_cast<Index>(r)];
          counts[static_cast<Index>(p)] += 1.0;
        }
      }
    }
  }
  for (std::size_t p = 0; p < panel_periods.size(); ++p) {
    if (counts[static_cast<Index>(p)] == 0.0) {
      if (why_missing)
        *why_missing = "no value for period '" + panel_periods[p] + "'";
      return std::nullopt;
    }
  }
  IndexSeries out;
  out.values = agg == TemporalAgg::mean
                   ? (sums.array() / counts.array()).matrix().eval()
                   : sums;
  out.kind = "external";
  out.source = IndexSource::input_based;
  return out;
}

DesignRiskReport score_external(
    const std::map<std::string, YieldPanel>& zones,
    const std::map<std::string, std::vector<ExternalSeries>>& externals,
    TemporalAgg agg, const std::vector<std::string>& window,
    VarianceDenominator denominator) {
  // per-zone optimum and zone-mean scores first; they anchor every row
  std::map<std::string, double> opt_by_zone;
  std::map<std::string, double> mean_by_zone;
  for (const auto& [zone_id, panel] : zones) {
    const RiskDecomposition d =
        decompose(panel, zone_mean_index(panel), RiskMetric::average,
                  denominator);
    opt_by_zone[zone_id] = d.r2_bar_opt;
    mean_by_zone[zone_id] = d.r2_bar;
  }

  auto pearson = [](const std::vector<double>& a,
                    const std::vector<double>& b) {
    const std::size_t n = a.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ma += a[i];
      mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sab += (a[i] - ma) * (b[i] - mb);
      saa += (a[i] - ma) * (a[i] - ma);
      sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (!(saa > 0.0) || !(sbb > 0.0))
      return std::numeric_limits<double>::quiet_NaN();
    return sab / std::sqrt(saa * sbb);
  };

  DesignRiskReport report;
  {
    DesignRiskRow opt_row;
    opt_row.index_name = "optimal";
    opt_row.zone_count = static_cast<Index>(zones.size());
    double sum = 0;
    for (const auto& [z, v] : opt_by_zone) sum += v;
    opt_row.mean_r2_bar = sum / static_cast<double>(zones.size());
    opt_row.cor_with_opt = 1.0;
    report.rows.push_back(std::move(opt_row));

    DesignRiskRow mean_row;
    mean_row.index_name = "zone_mean";
    mean_row.zone_count = static_cast<Index>(zones.size());
    std::vector<double> vals, opts;
    double mean_sum = 0;
    for (const auto& [z, v] : mean_by_zone) {
      mean_sum += v;
      vals.push_back(v);
      opts.push_back(opt_by_zone.at(z));
    }
    mean_row.mean_r2_bar = mean_sum / static_cast<double>(zones.size());
    mean_row.cor_with_opt = pearson(vals, opts);
    report.rows.push_back(std::move(mean_row));
  }

  for (const auto& [name, series_list] : externals) {
    DesignRiskRow row;
    row.index_name = name;
    std::map<std::string, const ExternalSeries*> by_zone;
    for (const auto& s : series_list) by_zone[s.zone_id] = &s;
    std::vector<double> vals, opts;
    for (const auto& [zone_id, panel] : zones) {
      auto it = by_zone.find(zone_id);
      if (it == by_zone.end()) {
        row.missing_zones.push_back(zone_id);
        continue;
      }
      std::string why;
      auto aligned =
          align_external(*it->second, panel.periods(), agg, window, &why);
      if (!aligned) {
        row.missing_zones.push_back(zone_id + " (" + why + ")");
        continue;
      }
      if (aligned->degenerate()) {
        row.missing_zones.push_back(zone_id + " (constant series)");
        continue;
      }
      aligned->kind = name;
      const RiskDecomposition d =
          decompose(panel, *aligned, RiskMetric::average, denominator);
      vals.push_back(d.r2_bar);
      opts.push_back(opt_by_zone.at(zone_id));
    }
    row.zone_count = static_cast<Index>(vals.size());
    double sum = 0;
    for (double v : vals) sum += v;
    row.mean_r2_bar =
        vals.empty() ? std::numeric_limits<double>::quiet_NaN()
                     : sum / static_cast<double>(vals.size());
    row.cor_with_opt = pearson(vals, opts);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace basisrisk
