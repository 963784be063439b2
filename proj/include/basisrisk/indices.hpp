#pragma once

#include <optional>
#include <string>
#include <vector>

#include "basisrisk/panel.hpp"
#include "basisrisk/panel_io.hpp"
#include "basisrisk/types.hpp"

namespace basisrisk {

enum class IndexSource { output_based, input_based };

/// A per-period index series, constant across space within its zone.
struct IndexSeries {
  Vector<double> values;  // length T, aligned with the panel's periods
  std::string kind;
  IndexSource source = IndexSource::output_based;

  /// Constant series carry no signal and are rejected by regressions.
  bool degenerate() const {
    return values.size() == 0 ||
           values.maxCoeff() == values.minCoeff();
  }
};

/// Unweighted mean across fields per period.
IndexSeries zone_mean_index(const YieldPanel& panel);

/// Mean over `size` fields sampled without replacement; seed-deterministic.
IndexSeries subsample_mean_index(const YieldPanel& panel, Index size,
                                 std::uint64_t rng_seed);

struct ExperimentRow {
  std::string kind;  // "subsample", "zone_mean", "optimal"
  Index size = 0;         // 0 on reference rows
  Index replication = -1; // -1 on reference rows
  double r2_bar = 0.0;
};

/// The subsample-mean experiment: R̄² of random subsample means for each
/// size/replication, plus zone-mean and optimal-index reference rows.
/// Replication r of size m uses stream (seed, "experiment:<m>:<r>"), so the
/// table is reproducible bit-exactly and independent of thread count.
std::vector<ExperimentRow> subsample_experiment(const YieldPanel& panel,
                                                const std::vector<Index>& sizes,
                                                Index replications,
                                                std::uint64_t rng_seed);

enum class TemporalAgg { mean, sum };

/// Collapses raw external rows onto the panel's period axis. A row matches
/// panel period P when its label is exactly P, or has the form P<sep>S with
/// sep in {-, _, :, /} and sub-period token S. `window`, when non-empty,
/// keeps only rows whose token S is listed (a growing-season mask).
/// Returns nullopt (with a reason) when any panel period ends up uncovered.
std::optional<IndexSeries> align_external(
    const ExternalSeries& series, const std::vector<std::string>& panel_periods,
    TemporalAgg agg, const std::vector<std::string>& window,
    std::string* why_missing = nullptr);

struct DesignRiskRow {
  std::string index_name;
  Index zone_count = 0;
  double mean_r2_bar = 0.0;   // average over zones of R̄²(f)
  double cor_with_opt = 0.0;  // cross-zone Pearson cor of R̄²_z(f) vs R̄²_z(f*)
  std::vector<std::string> missing_zones;
};

struct DesignRiskReport {
  std::vector<DesignRiskRow> rows;  // "optimal" first, then "zone_mean", ...
};

/// Scores external candidate indices against the per-zone optimum and the
/// zone mean. `zones` maps zone id -> panel; `externals` maps index name ->
/// per-zone raw series. Zones lacking an index's series are excluded from
/// that row's aggregates and listed.
DesignRiskReport score_external(
    const std::map<std::string, YieldPanel>& zones,
    const std::map<std::string, std::vector<ExternalSeries>>& externals,
    TemporalAgg agg, const std::vector<std::string>& window,
    VarianceDenominator denominator = VarianceDenominator::unbiased);

}  // namespace basisrisk
