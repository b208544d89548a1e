#include "octx/fdtgs.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace octx {

namespace {

double f1_from_counts(double tp, double fp, double fn) {
  const double denom = 2 * tp + fp + fn;
  return denom > 0 ? 2 * tp / denom : 0.0;
}

/// Sorted score/label view enabling O(log n) objective evaluation per
/// threshold pair.
struct ScoreIndex {
  std::vector<double> scores;        // ascending
  std::vector<std::int64_t> lesion_prefix;  // lesions among scores[0..i)
  std::int64_t total_lesions = 0;
  std::int64_t n = 0;

  explicit ScoreIndex(std::span<const PatchRecord> patches) {
    std::vector<std::pair<double, bool>> rows;
    rows.reserve(patches.size());
    for (const PatchRecord& rec : patches)
      rows.emplace_back(rec.score, rec.gt == GroundTruth::kLesion);
    std::sort(rows.begin(), rows.end());
    n = static_cast<std::int64_t>(rows.size());
    scores.resize(rows.size());
    lesion_prefix.assign(rows.size() + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      scores[i] = rows[i].first;
      lesion_prefix[i + 1] = lesion_prefix[i] + (rows[i].second ? 1 : 0);
    }
    total_lesions = lesion_prefix.back();
  }

  /// Objective of (low, high); NaN when rp and ns are both empty.
  double evaluate(double low, double high, double lambda) const {
    const auto ns_end = std::upper_bound(scores.begin(), scores.end(), low) - scores.begin();
    auto rp_begin = std::lower_bound(scores.begin(), scores.end(), high) - scores.begin();
    rp_begin = std::max(rp_begin, ns_end);  // ns takes precedence on overlap

    const double ns_count = static_cast<double>(ns_end);
    const double rp_count = static_cast<double>(n - rp_begin);
    if (ns_count + rp_count == 0) return std::numeric_limits<double>::quiet_NaN();

    const double fn = static_cast<double>(lesion_prefix[ns_end]);
    const double tp = static_cast<double>(total_lesions - lesion_prefix[rp_begin]);
    const double fp = rp_count - tp;
    const double noise = static_cast<double>(n) - ns_count - rp_count;
    return f1_from_counts(tp, fp, fn) - lambda * noise / static_cast<double>(n);
  }
};

}  // namespace

Partition partition(std::span<const PatchRecord> patches, double low, double high) {
  if (low > high) throw ParameterError("partition: low threshold exceeds high threshold");
  if (low < 0 || high > 1) throw ParameterError("partition: thresholds must lie in [0, 1]");
  Partition part;
  for (const PatchRecord& rec : patches) {
    if (rec.score <= low)
      part.ns.push_back(rec.patch_id);
    else if (rec.score >= high)
      part.rp.push_back(rec.patch_id);
    else
      part.noise.push_back(rec.patch_id);
  }
  return part;
}

double objective(const Partition& part, std::span<const PatchRecord> patches, double lambda) {
  if (part.rp.empty() && part.ns.empty())
    throw ParameterError("objective: rp and ns are both empty, objective undefined");

  std::unordered_map<std::int64_t, GroundTruth> gt;
  gt.reserve(patches.size());
  for (const PatchRecord& rec : patches) gt.emplace(rec.patch_id, rec.gt);

  double tp = 0, fp = 0, fn = 0;
  for (const std::int64_t id : part.rp)
    (gt.at(id) == GroundTruth::kLesion ? tp : fp) += 1;
  for (const std::int64_t id : part.ns)
    if (gt.at(id) == GroundTruth::kLesion) fn += 1;

  const double total = static_cast<double>(part.rp.size() + part.ns.size() + part.noise.size());
  return f1_from_counts(tp, fp, fn) - lambda * static_cast<double>(part.noise.size()) / total;
}

SearchResult search(std::span<const PatchRecord> patches, const SearchConfig& cfg) {
  if (patches.empty()) throw ParameterError("search: empty patch set");
  if (cfg.grid < 2) throw ParameterError("search: grid must be >= 2");
  if (!(cfg.shrink > 0 && cfg.shrink < 1)) throw ParameterError("search: shrink must be in (0, 1)");

  const ScoreIndex index(patches);
  if (index.n < 2 || index.scores.front() == index.scores.back())
    throw ParameterError("search: need at least 2 distinct scores");

  double low_lo = cfg.low_min, low_hi = cfg.low_max;
  double high_lo = cfg.high_min, high_hi = cfg.high_max;
  double low_width = low_hi - low_lo;
  double high_width = high_hi - high_lo;

  SearchResult result;
  double best = -std::numeric_limits<double>::infinity();
  double best_low = low_lo, best_high = high_hi;

  const auto lattice = [&](double lo, double hi, int k) {
    std::vector<double> pts(static_cast<std::size_t>(cfg.grid));
    for (int i = 0; i < cfg.grid; ++i)
      pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (cfg.grid - 1);
    (void)k;
    return pts;
  };

  int it = 0;
  for (it = 1; it <= cfg.max_iter; ++it) {
    const std::vector<double> lows = lattice(low_lo, low_hi, cfg.grid);
    const std::vector<double> highs = lattice(high_lo, high_hi, cfg.grid);
    bool any_pair = false;
    for (const double lo : lows) {
      for (const double hi : highs) {
        if (lo > hi) continue;
        any_pair = true;
        const double val = index.evaluate(lo, hi, cfg.lambda);
        if (std::isnan(val)) continue;
        if (val > best) {
          best = val;
          best_low = lo;
          best_high = hi;
        }
      }
    }
    if (!any_pair) throw ParameterError("search: brackets admit no pair with low <= high");

    result.trace.push_back(TraceRow{it, best, best_low, best_high});

    // recenter on the incumbent, shrink, keep inside [0, 1] by shifting
    low_width *= cfg.shrink;
    high_width *= cfg.shrink;
    const auto recenter = [](double center, double width, double& lo, double& hi) {
      lo = center - width / 2;
      hi = center + width / 2;
      if (lo < 0) {
        hi -= lo;
        lo = 0;
      }
      if (hi > 1) {
        lo -= hi - 1;
        hi = 1;
      }
      lo = std::max(lo, 0.0);
    };
    recenter(best_low, low_width, low_lo, low_hi);
    recenter(best_high, high_width, high_lo, high_hi);

    if (std::max(low_width, high_width) < cfg.tol) break;
  }

  result.thresholds.d1 = best_low;
  result.thresholds.d2 = best_high;
  result.thresholds.d3 = 1.0 - best_high;
  result.thresholds.d4 = 1.0 - best_low;
  result.state.iteration = std::min(it, cfg.max_iter);
  result.state.low_bracket_min = low_lo;
  result.state.low_bracket_max = low_hi;
  result.state.high_bracket_min = high_lo;
  result.state.high_bracket_max = high_hi;
  result.state.incumbent = result.thresholds;
  result.state.incumbent_objective = best;
  result.state.tolerance = cfg.tol;
  return result;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> select_rp_ns(const Partition& part) {
  return {part.rp, part.ns};
}

std::vector<std::int64_t> significant_patches(const Partition& part,
                                              std::span<const PatchRecord> patches,
                                              double lambda, double cutoff) {
  std::unordered_map<std::int64_t, GroundTruth> gt;
  gt.reserve(patches.size());
  for (const PatchRecord& rec : patches) gt.emplace(rec.patch_id, rec.gt);

  double tp = 0, fp = 0, fn = 0;
  for (const std::int64_t id : part.rp)
    (gt.at(id) == GroundTruth::kLesion ? tp : fp) += 1;
  for (const std::int64_t id : part.ns)
    if (gt.at(id) == GroundTruth::kLesion) fn += 1;

  const double noise = static_cast<double>(part.noise.size());
  const double n = static_cast<double>(part.rp.size() + part.ns.size() + part.noise.size());
  const double base = f1_from_counts(tp, fp, fn) - lambda * noise / n;

  std::vector<std::int64_t> out;
  const auto consider = [&](std::int64_t id, double tp2, double fp2, double fn2) {
    if (n <= 1) return;
    const double obj = f1_from_counts(tp2, fp2, fn2) - lambda * noise / (n - 1);
    if (std::abs(obj - base) > cutoff) out.push_back(id);
  };
  for (const std::int64_t id : part.rp) {
    if (gt.at(id) == GroundTruth::kLesion)
      consider(id, tp - 1, fp, fn);
    else
      consider(id, tp, fp - 1, fn);
  }
  for (const std::int64_t id : part.ns) {
    if (gt.at(id) == GroundTruth::kLesion)
      consider(id, tp, fp, fn - 1);
    else
      consider(id, tp, fp, fn);
  }
  return out;
}

}  // namespace octx
