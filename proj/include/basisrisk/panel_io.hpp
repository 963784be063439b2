#pragma once

#include <string>
#include <vector>

#include "basisrisk/panel.hpp"

namespace basisrisk {

/// Column-name map for the long-format yield CSV. Required columns:
/// field_id, period, yield. The rest are picked up only when present in the
/// file header. `period_order`, when present, gives an explicit numeric sort
/// key for periods; otherwise period labels sort lexicographically.
struct PanelSchema {
  std::string field_id = "field_id";
  std::string period = "period";
  std::string yield_value = "yield";
  std::string lon = "lon";
  std::string lat = "lat";
  std::string zone_l1 = "zone_l1";
  std::string zone_l2 = "zone_l2";
  std::string zone_l3 = "zone_l3";
  std::string period_order = "period_order";
};

enum class BalancePolicy { reject, drop_incomplete_fields };

struct LoadReport {
  Index dropped_fields = 0;
  std::vector<std::string> dropped_ids;
};

/// Ingests a long-format CSV into a balanced panel. Negative, non-finite, or
/// non-numeric yields are rejected with the offending row named. Fields keep
/// file order; periods are sorted (see PanelSchema).
YieldPanel load_panel(const std::string& path, const PanelSchema& schema = {},
                      BalancePolicy policy = BalancePolicy::reject,
                      LoadReport* report = nullptr);

/// Writes the panel back in the ingestion format. Values use shortest
/// round-trip formatting, so load(save(p)) reproduces p bit-identically.
void save_panel(const YieldPanel& panel, const std::string& path);

/// One zone's raw external-index rows, in file order.
struct ExternalSeries {
  std::string zone_id;
  std::vector<std::string> periods;
  Vector<double> values;
};

/// Reads an external-index CSV with header zone_id,period,value.
std::vector<ExternalSeries> load_external(const std::string& path);

}  // namespace basisrisk
