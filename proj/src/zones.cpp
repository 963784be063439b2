#include "basisrisk/zones.hpp"

#include <algorithm>
#include <cmath>

#include "basisrisk/parallel.hpp"

namespace basisrisk {

ZonalSweepResult zonal_sweep(const YieldPanel& panel,
                             const std::vector<ZoneLevel>& levels,
                             const ZoneAreas& areas,
                             VarianceDenominator denominator) {
  ZonalSweepResult result;
  for (ZoneLevel level : levels) {
    if (!panel.has_level(level))
      throw Error(ErrorKind::metadata,
                  "zone level " + to_string(level) +
                      " is not populated for every field");
    const auto groups = group_by_zone(panel, level);
    ZonalLevelSummary summary;
    summary.level = to_string(level);
    double r2_sum = 0.0, risk_sum = 0.0, fields_sum = 0.0;
    double area_sum = 0.0;
    Index area_count = 0;
    for (const auto& [zone_id, rows] : groups) {
      ZonalRiskRow row;
      row.level = to_string(level);
      row.zone_id = zone_id;
      row.n_fields = static_cast<Index>(rows.size());
      const YieldPanel zone_panel =
          row.n_fields == panel.field_count() ? panel
                                              : subset_rows(panel, rows);
      row.r2_bar_opt = optimal_r2(zone_panel, RiskMetric::average, denominator);
      row.zonal_risk = 1.0 - row.r2_bar_opt;
      auto area_it = areas.find({row.level, zone_id});
      if (area_it != areas.end()) {
        row.area_km2 = area_it->second;
        area_sum += area_it->second;
        ++area_count;
      }
      r2_sum += row.r2_bar_opt;
      risk_sum += row.zonal_risk;
      fields_sum += static_cast<double>(row.n_fields);
      result.rows.push_back(std::move(row));
    }
    summary.n_units = static_cast<Index>(groups.size());
    summary.n_fields_avg = fields_sum / static_cast<double>(groups.size());
    summary.r2_bar_opt = r2_sum / static_cast<double>(groups.size());
    summary.zonal_risk = risk_sum / static_cast<double>(groups.size());
    if (area_count > 0)
      summary.area_km2 = area_sum / static_cast<double>(area_count);
    result.levels.push_back(std::move(summary));
  }
  return result;
}

RadiusSweepResult radius_sweep(const YieldPanel& panel,
                               const std::vector<double>& radii_m,
                               double exclusion_m, Index min_fields,
                               VarianceDenominator denominator) {
  if (!panel.has_coordinates())
    throw Error(ErrorKind::metadata,
                "radius sweep requires coordinates on every field");
  for (double r : radii_m)
    if (!(r > 0.0))
      throw Error(ErrorKind::validation, "radii must be positive");
  std::vector<double> exclusions{0.0};
  if (exclusion_m > 0.0) exclusions.push_back(exclusion_m);

  const Index n = panel.field_count();
  const Index combos =
      static_cast<Index>(radii_m.size() * exclusions.size());
  RadiusSweepResult result;
  result.rows.resize(static_cast<std::size_t>(n * combos));

  parallel_for(n, [&](Index i) {
    const auto& center = panel.fields()[static_cast<std::size_t>(i)];
    // distances from this center, computed once per field
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
      const auto& f = panel.fields()[static_cast<std::size_t>(j)];
      dist[static_cast<std::size_t>(j)] =
          haversine_m(*center.lon, *center.lat, *f.lon, *f.lat);
    }
    Index slot = i * combos;
    for (double radius : radii_m) {
      for (double excl : exclusions) {
        RadiusRow row;
        row.field_id = center.field_id;
        row.radius = radius;
        row.exclusion = excl;
        std::vector<Index> members;
        for (Index j = 0; j < n; ++j) {
          const double d = dist[static_cast<std::size_t>(j)];
          if (j == i || (d > excl && d <= radius)) members.push_back(j);
        }
        row.n_fields = static_cast<Index>(members.size());
        if (row.n_fields >= min_fields) {
          const YieldPanel zone = subset_rows(panel, members);
          row.r2_bar_opt = optimal_r2(zone, RiskMetric::average, denominator);
        }
        result.rows[static_cast<std::size_t>(slot++)] = std::move(row);
      }
    }
  });

  for (double radius : radii_m) {
    for (double excl : exclusions) {
      RadiusCurvePoint point;
      point.radius = radius;
      point.exclusion = excl;
      double sum = 0.0;
      for (const auto& row : result.rows) {
        if (row.radius == radius && row.exclusion == excl &&
            !std::isnan(row.r2_bar_opt)) {
          sum += row.r2_bar_opt;
          ++point.n_centers;
        }
      }
      if (point.n_centers > 0)
        point.mean_r2_bar_opt = sum / static_cast<double>(point.n_centers);
      result.curve.push_back(point);
    }
  }
  return result;
}

}  // namespace basisrisk
