#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "octx/patching.hpp"

namespace octx {

struct Confusion {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  Confusion operator+(const Confusion& o) const {
    return Confusion{tp + o.tp, fp + o.fp, tn + o.tn, fn + o.fn};
  }
};

enum class Aggregation : std::uint8_t { kPerClass, kOverallPixel };

/// Zero-denominator conventions: precision/recall/specificity are 0 when the
/// denominator is 0; MCC is 0 when any marginal is 0.
struct MetricReport {
  double accuracy = 0;
  double sensitivity = 0;  ///< recall
  double specificity = 0;
  double precision = 0;
  double f_measure = 0;
  double mcc = 0;
  double dice = 0;
  double jaccard = 0;
  double iou = 0;
  double fnr = 0;
  double fpr = 0;
  double auc = 0;  ///< filled by callers that have scores
  Aggregation aggregation = Aggregation::kOverallPixel;
};

Confusion from_predictions(std::span<const GroundTruth> preds, std::span<const GroundTruth> gt);

MetricReport report(const Confusion& c);

struct RocPoint {
  double threshold = 0;
  double fpr = 0;
  double tpr = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0;
};

/// ROC over sorted unique score thresholds; AUC equals the tie-corrected
/// Mann-Whitney statistic (trapezoids across tie groups). Throws when gt has
/// a single class.
RocCurve roc_auc(std::span<const double> scores, std::span<const GroundTruth> gt);

/// PC = unweighted mean of per-class metric values; OP = metrics of the
/// summed confusion counts.
std::pair<MetricReport, MetricReport> pc_op_aggregate(std::span<const Confusion> per_class);

/// accuracy * min(1, fps / reference_fps).
double speed_performance_index(double accuracy, double frames_per_second, double reference_fps);

}  // namespace octx
