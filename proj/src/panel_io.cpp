#include "basisrisk/panel_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "basisrisk/csv.hpp"
#include "basisrisk/errors.hpp"

namespace basisrisk {

namespace {

std::size_t require_column(const CsvTable& table, const std::string& name,
                           const std::string& path) {
  auto col = table.column(name);
  if (!col)
    throw Error(ErrorKind::schema,
                path + ": missing required column '" + name + "'");
  return *col;
}

}  // namespace

YieldPanel load_panel(const std::string& path, const PanelSchema& schema,
                      BalancePolicy policy, LoadReport* report) {
  const CsvTable table = read_csv(path);
  const std::size_t col_id = require_column(table, schema.field_id, path);
  const std::size_t col_period = require_column(table, schema.period, path);
  const std::size_t col_yield = require_column(table, schema.yield_value, path);
  const auto col_lon = table.column(schema.lon);
  const auto col_lat = table.column(schema.lat);
  const auto col_l1 = table.column(schema.zone_l1);
  const auto col_l2 = table.column(schema.zone_l2);
  const auto col_l3 = table.column(schema.zone_l3);
  const auto col_order = table.column(schema.period_order);
  if (col_lon.has_value() != col_lat.has_value())
    throw Error(ErrorKind::schema,
                path + ": lon and lat columns must be given together");

  struct Cell {
    double value;
    std::size_t row;
  };
  std::vector<std::string> field_order;
  std::map<std::string, FieldMeta> metas;
  std::map<std::string, std::map<std::string, Cell>> cells;  // id -> period
  std::map<std::string, double> period_keys;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context =
        path + " row " + std::to_string(r + 2);  // 1-based + header
    const std::string& id = row[col_id];
    const std::string& period = row[col_period];
    if (id.empty())
      throw Error(ErrorKind::parse, context + ": empty field id");
    if (period.empty())
      throw Error(ErrorKind::parse, context + ": empty period label");
    const double value = parse_double(row[col_yield], context);
    if (!std::isfinite(value))
      throw Error(ErrorKind::validation, context + ": non-finite yield");
    if (value < 0.0)
      throw Error(ErrorKind::validation,
                  context + ": negative yield " + row[col_yield]);

    auto meta_it = metas.find(id);
    if (meta_it == metas.end()) {
      FieldMeta meta;
      meta.field_id = id;
      if (col_lon) {
        meta.lon = parse_double(row[*col_lon], context);
        meta.lat = parse_double(row[*col_lat], context);
      }
      if (col_l1 && !row[*col_l1].empty()) meta.zone_l1 = row[*col_l1];
      if (col_l2 && !row[*col_l2].empty()) meta.zone_l2 = row[*col_l2];
      if (col_l3 && !row[*col_l3].empty()) meta.zone_l3 = row[*col_l3];
      metas.emplace(id, std::move(meta));
      field_order.push_back(id);
    }
    auto [cell_it, inserted] =
        cells[id].emplace(period, Cell{value, r + 2});
    if (!inserted)
      throw Error(ErrorKind::balance,
                  context + ": duplicate observation for field '" + id +
                      "' period '" + period + "' (first at row " +
                      std::to_string(cell_it->second.row) + ")");
    if (col_order)
      period_keys[period] = parse_double(row[*col_order], context);
  }
  if (field_order.empty())
    throw Error(ErrorKind::validation, path + ": no data rows");

  // Period axis: union of labels, ordered by the explicit key when given.
  std::set<std::string> period_set;
  for (const auto& [id, by_period] : cells)
    for (const auto& [period, cell] : by_period) period_set.insert(period);
  std::vector<std::string> periods(period_set.begin(), period_set.end());
  if (col_order) {
    std::stable_sort(periods.begin(), periods.end(),
                     [&](const std::string& a, const std::string& b) {
                       return period_keys.at(a) < period_keys.at(b);
                     });
  }

  std::vector<std::string> kept;
  std::vector<std::string> dropped;
  for (const auto& id : field_order) {
    const auto& by_period = cells.at(id);
    bool complete = by_period.size() == periods.size();
    if (complete) {
      kept.push_back(id);
    } else if (policy == BalancePolicy::drop_incomplete_fields) {
      dropped.push_back(id);
    } else {
      std::string missing;
      for (const auto& p : periods)
        if (!by_period.count(p)) {
          missing = p;
          break;
        }
      throw Error(ErrorKind::balance,
                  path + ": field '" + id + "' has no observation for period '" +
                      missing + "' (policy=reject)");
    }
  }
  if (kept.empty())
    throw Error(ErrorKind::balance,
                path + ": no complete fields after balancing");
  if (report) {
    report->dropped_fields = static_cast<Index>(dropped.size());
    report->dropped_ids = dropped;
  }

  std::vector<FieldMeta> fields;
  fields.reserve(kept.size());
  Matrix<double> values(static_cast<Index>(kept.size()),
                        static_cast<Index>(periods.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    fields.push_back(metas.at(kept[i]));
    const auto& by_period = cells.at(kept[i]);
    for (std::size_t j = 0; j < periods.size(); ++j)
      values(static_cast<Index>(i), static_cast<Index>(j)) =
          by_period.at(periods[j]).value;
  }
  return YieldPanel(std::move(fields), std::move(periods), std::move(values));
}

void save_panel(const YieldPanel& panel, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::not_found, "cannot write file: " + path);
  bool any_coord = false, any_l1 = false, any_l2 = false, any_l3 = false;
  for (const auto& f : panel.fields()) {
    any_coord |= f.lon.has_value();
    any_l1 |= f.zone_l1.has_value();
    any_l2 |= f.zone_l2.has_value();
    any_l3 |= f.zone_l3.has_value();
  }
  std::vector<std::string> header = {"field_id", "period", "yield"};
  if (any_coord) {
    header.push_back("lon");
    header.push_back("lat");
  }
  if (any_l1) header.push_back("zone_l1");
  if (any_l2) header.push_back("zone_l2");
  if (any_l3) header.push_back("zone_l3");
  write_csv_row(out, header);
  for (Index i = 0; i < panel.field_count(); ++i) {
    const auto& f = panel.fields()[static_cast<std::size_t>(i)];
    for (Index t = 0; t < panel.period_count(); ++t) {
      std::vector<std::string> row = {
          f.field_id, panel.periods()[static_cast<std::size_t>(t)],
          format_double(panel.values()(i, t))};
      if (any_coord) {
        row.push_back(f.lon ? format_double(*f.lon) : "");
        row.push_back(f.lat ? format_double(*f.lat) : "");
      }
      if (any_l1) row.push_back(f.zone_l1.value_or(""));
      if (any_l2) row.push_back(f.zone_l2.value_or(""));
      if (any_l3) row.push_back(f.zone_l3.value_or(""));
      write_csv_row(out, row);
    }
  }
}

std::vector<ExternalSeries> load_external(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::size_t col_zone = require_column(table, "zone_id", path);
  const std::size_t col_period = require_column(table, "period", path);
  const std::size_t col_value = require_column(table, "value", path);
  std::vector<std::string> order;
  std::map<std::string, ExternalSeries> by_zone;
  std::map<std::string, std::vector<double>> zone_values;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + " row " + std::to_string(r + 2);
    const std::string& zone = row[col_zone];
    if (zone.empty()) throw Error(ErrorKind::parse, context + ": empty zone id");
    const double value = parse_double(row[col_value], context);
    if (!std::isfinite(value))
      throw Error(ErrorKind::validation, context + ": non-finite value");
    auto it = by_zone.find(zone);
    if (it == by_zone.end()) {
      it = by_zone.emplace(zone, ExternalSeries{zone, {}, {}}).first;
      order.push_back(zone);
    }
    it->second.periods.push_back(row[col_period]);
    zone_values[zone].push_back(value);
  }
  std::vector<ExternalSeries> out;
  out.reserve(order.size());
  for (const auto& zone : order) {
    ExternalSeries s = std::move(by_zone.at(zone));
    const auto& vals = zone_values.at(zone);
    s.values = Eigen::Map<const Vector<double>>(vals.data(),
                                                static_cast<Index>(vals.size()));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace basisrisk
