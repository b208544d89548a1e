#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "octx/patching.hpp"

namespace octx {

/// The four adaptive thresholds: (d1, d2) bracket the positive-oriented
/// score for the PL stream; (d3, d4) are the mirrored pair on (1 - score)
/// for the NL stream.
struct ThresholdSet {
  double d1 = 0, d2 = 1;
  double d3 = 0, d4 = 1;
};

/// Disjoint cover of the patch ids: rp (score >= high), ns (score <= low,
/// tested first), noise (the band in between).
struct Partition {
  std::vector<std::int64_t> rp;
  std::vector<std::int64_t> ns;
  std::vector<std::int64_t> noise;
};

struct SearchConfig {
  int max_iter = 50;
  int grid = 11;
  double shrink = 0.5;
  double tol = 1e-4;        ///< stop once both bracket widths fall below this
  double lambda = 0.05;     ///< coverage penalty weight on the noise band
  double low_min = 0.0;     ///< initial bracket for the low threshold
  double low_max = 1.0;
  double high_min = 0.0;    ///< initial bracket for the high threshold
  double high_max = 1.0;
};

struct SearchState {
  int iteration = 0;
  double low_bracket_min = 0, low_bracket_max = 1;
  double high_bracket_min = 0, high_bracket_max = 1;
  ThresholdSet incumbent;
  double incumbent_objective = 0;
  double tolerance = 0;
};

/// One row of the search trace; mirrors the supplementary-table layout.
struct TraceRow {
  int iteration = 0;
  double peak_value = 0;
  double low_retrieval = 0;
  double high_retrieval = 0;
};

struct SearchResult {
  ThresholdSet thresholds;
  SearchState state;
  std::vector<TraceRow> trace;
};

/// Apply (low, high) to the fused scores. Boundary precedence: score <= low
/// goes to ns before the rp test, so low == high is still a disjoint cover.
Partition partition(std::span<const PatchRecord> patches, double low, double high);

/// F1 of the induced labeling (rp -> lesion, ns -> background, noise
/// excluded) minus lambda * |noise| / |all|. Throws when rp and ns are both
/// empty (the objective is undefined without any committed patch).
double objective(const Partition& part, std::span<const PatchRecord> patches, double lambda = 0.05);

/// Coarse-to-fine double-threshold search: evaluate a grid x grid lattice of
/// (low, high) pairs with low <= high over the current brackets, recenter on
/// the incumbent, shrink, repeat.
SearchResult search(std::span<const PatchRecord> patches, const SearchConfig& config = {});

/// RP / NS batches ready for fine-tuning; the noise band stays behind for
/// the agent.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> select_rp_ns(const Partition& part);

/// Ids in rp or ns whose single-patch removal shifts the objective by more
/// than `cutoff` (the >5% significance convention).
std::vector<std::int64_t> significant_patches(const Partition& part,
                                              std::span<const PatchRecord> patches,
                                              double lambda = 0.05, double cutoff = 0.05);

}  // namespace octx
