#include "basisrisk/panel.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "basisrisk/errors.hpp"

namespace basisrisk {

std::string to_string(ZoneLevel level) {
  switch (level) {
    case ZoneLevel::l0: return "L0";
    case ZoneLevel::l1: return "L1";
    case ZoneLevel::l2: return "L2";
    case ZoneLevel::l3: return "L3";
  }
  return "?";
}

ZoneLevel zone_level_from_string(const std::string& s) {
  if (s == "L0" || s == "l0") return ZoneLevel::l0;
  if (s == "L1" || s == "l1") return ZoneLevel::l1;
  if (s == "L2" || s == "l2") return ZoneLevel::l2;
  if (s == "L3" || s == "l3") return ZoneLevel::l3;
  throw Error(ErrorKind::validation, "unknown zone level: " + s);
}

YieldPanel::YieldPanel(std::vector<FieldMeta> fields,
                       std::vector<std::string> periods, Matrix<double> values)
    : fields_(std::move(fields)),
      periods_(std::move(periods)),
      values_(std::move(values)) {
  const Index n = values_.rows();
  const Index t = values_.cols();
  if (n < 1 || static_cast<Index>(fields_.size()) != n)
    throw Error(ErrorKind::validation, "panel needs at least one field and "
                                       "one FieldMeta per value row");
  if (t < 2 || static_cast<Index>(periods_.size()) != t)
    throw Error(ErrorKind::validation,
                "panel needs at least two periods (variance requires >= 2 "
                "observations)");
  if (!values_.allFinite())
    throw Error(ErrorKind::validation, "panel contains non-finite yields");
  for (Index i = 0; i < n; ++i) {
    auto [it, inserted] = id_index_.emplace(fields_[i].field_id, i);
    if (!inserted)
      throw Error(ErrorKind::validation,
                  "duplicate field id: " + fields_[i].field_id);
  }
  // Nested hierarchy: a ward (L3) may not straddle two sub-counties (L2).
  std::map<std::string, std::string> l3_to_l2;
  for (const auto& f : fields_) {
    if (f.zone_l3 && f.zone_l2) {
      auto [it, inserted] = l3_to_l2.emplace(*f.zone_l3, *f.zone_l2);
      if (!inserted && it->second != *f.zone_l2)
        throw Error(ErrorKind::metadata,
                    "zone " + *f.zone_l3 + " maps to both L2 zones " +
                        it->second + " and " + *f.zone_l2);
    }
  }
}

Index YieldPanel::index_of(const std::string& field_id) const {
  auto it = id_index_.find(field_id);
  return it == id_index_.end() ? Index{-1} : it->second;
}

const std::optional<std::string>& YieldPanel::zone_label(
    Index row, ZoneLevel level) const {
  static const std::optional<std::string> kWholePanel{std::string{}};
  const auto& f = fields_[static_cast<std::size_t>(row)];
  switch (level) {
    case ZoneLevel::l0: return kWholePanel;
    case ZoneLevel::l1: return f.zone_l1;
    case ZoneLevel::l2: return f.zone_l2;
    case ZoneLevel::l3: return f.zone_l3;
  }
  return kWholePanel;
}

bool YieldPanel::has_coordinates() const {
  for (const auto& f : fields_)
    if (!f.lon || !f.lat) return false;
  return true;
}

bool YieldPanel::has_level(ZoneLevel level) const {
  if (level == ZoneLevel::l0) return true;
  for (Index i = 0; i < field_count(); ++i)
    if (!zone_label(i, level)) return false;
  return true;
}

YieldPanel subset_rows(const YieldPanel& panel,
                       const std::vector<Index>& rows) {
  if (rows.empty())
    throw Error(ErrorKind::validation, "subset would produce an empty panel");
  std::vector<FieldMeta> fields;
  fields.reserve(rows.size());
  Matrix<double> values(static_cast<Index>(rows.size()),
                        panel.period_count());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    fields.push_back(panel.fields()[static_cast<std::size_t>(rows[k])]);
    values.row(static_cast<Index>(k)) = panel.values().row(rows[k]);
  }
  return YieldPanel(std::move(fields), panel.periods(), std::move(values));
}

YieldPanel subset_by_zone(const YieldPanel& panel, ZoneLevel level,
                          const std::string& zone_id) {
  if (!panel.has_level(level))
    throw Error(ErrorKind::metadata,
                "zone level " + to_string(level) +
                    " is not populated for every field");
  std::vector<Index> rows;
  for (Index i = 0; i < panel.field_count(); ++i) {
    const auto& label = panel.zone_label(i, level);
    if (label && *label == zone_id) rows.push_back(i);
  }
  if (rows.empty())
    throw Error(ErrorKind::not_found, "no fields in zone '" + zone_id +
                                          "' at level " + to_string(level));
  return subset_rows(panel, rows);
}

std::map<std::string, std::vector<Index>> group_by_zone(
    const YieldPanel& panel, ZoneLevel level) {
  std::map<std::string, std::vector<Index>> groups;
  for (Index i = 0; i < panel.field_count(); ++i) {
    const auto& label = panel.zone_label(i, level);
    if (label) groups[*label].push_back(i);
  }
  return groups;
}

double haversine_m(double lon1, double lat1, double lon2, double lat2) {
  constexpr double kEarthRadiusM = 6'371'000.0;
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  const double phi1 = lat1 * kDegToRad;
  const double phi2 = lat2 * kDegToRad;
  const double dphi = (lat2 - lat1) * kDegToRad;
  const double dlam = (lon2 - lon1) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlam / 2.0);
  const double a = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(a)));
}

YieldPanel neighborhood(const YieldPanel& panel, const std::string& center_id,
                        double radius_m, double exclusion_m) {
  if (!panel.has_coordinates())
    throw Error(ErrorKind::metadata,
                "neighborhood requires coordinates on every field");
  if (!(exclusion_m >= 0.0) || !(radius_m > exclusion_m))
    throw Error(ErrorKind::validation,
                "neighborhood requires radius > exclusion >= 0");
  const Index center = panel.index_of(center_id);
  if (center < 0)
    throw Error(ErrorKind::not_found, "unknown field id: " + center_id);
  const auto& cf = panel.fields()[static_cast<std::size_t>(center)];
  std::vector<Index> rows;
  for (Index i = 0; i < panel.field_count(); ++i) {
    if (i == center) {
      rows.push_back(i);
      continue;
    }
    const auto& f = panel.fields()[static_cast<std::size_t>(i)];
    const double d = haversine_m(*cf.lon, *cf.lat, *f.lon, *f.lat);
    if (d > exclusion_m && d <= radius_m) rows.push_back(i);
  }
  return subset_rows(panel, rows);
}

}  // namespace basisrisk
