#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "basisrisk/decomposition.hpp"
#include "basisrisk/panel.hpp"

namespace basisrisk {

struct ZonalRiskRow {
  std::string level;  // "L0".."L3" or "radius"
  std::string zone_id;
  Index n_fields = 0;
  double r2_bar_opt = 0.0;
  double zonal_risk = 0.0;  // 1 - r2_bar_opt
  std::optional<double> area_km2;
};

struct ZonalLevelSummary {
  std::string level;
  Index n_units = 0;
  double n_fields_avg = 0.0;
  double r2_bar_opt = 0.0;  // unweighted mean over zones
  double zonal_risk = 0.0;
  std::optional<double> area_km2;  // mean over zones with known area
};

struct ZonalSweepResult {
  std::vector<ZonalRiskRow> rows;        // ordered by (level, zone_id)
  std::vector<ZonalLevelSummary> levels; // one per requested level
};

/// Optional per-zone area metadata: (level, zone_id) -> km².
using ZoneAreas = std::map<std::pair<std::string, std::string>, double>;

/// Per-zone optimal covariant risk at each requested level; level summary
/// is the unweighted mean of its zone rows. L0 treats the whole panel as a
/// single zone.
ZonalSweepResult zonal_sweep(
    const YieldPanel& panel, const std::vector<ZoneLevel>& levels,
    const ZoneAreas& areas = {},
    VarianceDenominator denominator = VarianceDenominator::unbiased);

struct RadiusRow {
  std::string field_id;
  double radius = 0.0;
  double exclusion = 0.0;
  Index n_fields = 0;
  double r2_bar_opt = std::numeric_limits<double>::quiet_NaN();  // NaN: skipped
};

struct RadiusCurvePoint {
  double radius = 0.0;
  double exclusion = 0.0;
  Index n_centers = 0;  // centers meeting min_fields
  double mean_r2_bar_opt = std::numeric_limits<double>::quiet_NaN();
};

struct RadiusSweepResult {
  std::vector<RadiusRow> rows;            // by (field order, radius, exclusion)
  std::vector<RadiusCurvePoint> curve;    // mean over usable centers
};

/// Circle-zone sweep: for each field and radius, the optimal covariant risk
/// of the surrounding neighborhood. Neighborhoods below `min_fields` are
/// recorded but skipped (NaN). When `exclusion_m > 0` every combination is
/// computed twice, with exclusion 0 and as given.
RadiusSweepResult radius_sweep(
    const YieldPanel& panel, const std::vector<double>& radii_m,
    double exclusion_m, Index min_fields = 10,
    VarianceDenominator denominator = VarianceDenominator::unbiased);

}  // namespace basisrisk
