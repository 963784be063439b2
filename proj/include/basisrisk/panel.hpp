#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "basisrisk/types.hpp"

namespace basisrisk {

struct FieldMeta {
  std::string field_id;
  std::optional<double> lon;
  std::optional<double> lat;
  std::optional<std::string> zone_l1;
  std::optional<std::string> zone_l2;
  std::optional<std::string> zone_l3;
};

enum class ZoneLevel { l0, l1, l2, l3 };

std::string to_string(ZoneLevel level);
ZoneLevel zone_level_from_string(const std::string& s);

/// Balanced field-by-period yield panel. Immutable after construction;
/// safe to share across threads.
///
/// Construction validates shape (N >= 1, T >= 2), field-id uniqueness,
/// finiteness of all cells, and consistency of the L3 -> L2 zone nesting.
class YieldPanel {
 public:
  YieldPanel(std::vector<FieldMeta> fields, std::vector<std::string> periods,
             Matrix<double> values);

  const std::vector<FieldMeta>& fields() const { return fields_; }
  const std::vector<std::string>& periods() const { return periods_; }
  const Matrix<double>& values() const { return values_; }  // N x T

  Index field_count() const { return values_.rows(); }
  Index period_count() const { return values_.cols(); }

  /// Row index of a field id, or -1.
  Index index_of(const std::string& field_id) const;

  /// Zone label of field `row` at `level`; L0 maps every field to "".
  const std::optional<std::string>& zone_label(Index row,
                                               ZoneLevel level) const;

  bool has_coordinates() const;
  bool has_level(ZoneLevel level) const;

 private:
  std::vector<FieldMeta> fields_;
  std::vector<std::string> periods_;
  Matrix<double> values_;
  std::map<std::string, Index> id_index_;
};

/// Panel restricted to the given rows (order preserved).
YieldPanel subset_rows(const YieldPanel& panel, const std::vector<Index>& rows);

/// Fields whose label at `level` equals zone_id. Throws Error{metadata} if
/// the level is unpopulated and Error{not_found} for an unknown zone id.
YieldPanel subset_by_zone(const YieldPanel& panel, ZoneLevel level,
                          const std::string& zone_id);

/// Row indices grouped by zone label at `level`, keys sorted. L0 puts the
/// whole panel under "". Fields without a label at that level are skipped.
std::map<std::string, std::vector<Index>> group_by_zone(const YieldPanel& panel,
                                                        ZoneLevel level);

/// Great-circle distance in meters (haversine, Earth radius 6,371,000 m).
double haversine_m(double lon1, double lat1, double lon2, double lat2);

/// Fields at great-circle distance d from `center_id` with
/// exclusion < d <= radius, plus the center field itself. Requires
/// coordinates on every field and radius > exclusion >= 0.
YieldPanel neighborhood(const YieldPanel& panel, const std::string& center_id,
                        double radius_m, double exclusion_m);

}  // namespace basisrisk
