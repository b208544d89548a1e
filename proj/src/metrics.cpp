#include "octx/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace octx {

Confusion from_predictions(std::span<const GroundTruth> preds, std::span<const GroundTruth> gt) {
  if (preds.size() != gt.size())
    throw ParameterError("from_predictions: prediction and ground-truth lengths differ");
  Confusion c;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool p = preds[i] == GroundTruth::kLesion;
    const bool t = gt[i] == GroundTruth::kLesion;
    if (p && t)
      ++c.tp;
    else if (p && !t)
      ++c.fp;
    else if (!p && t)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

MetricReport report(const Confusion& c) {
  if (c.total() <= 0) throw ParameterError("report: empty confusion matrix");
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);

  MetricReport r;
  r.accuracy = (tp + tn) / (tp + tn + fp + fn);
  r.sensitivity = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  r.specificity = tn + fp > 0 ? tn / (tn + fp) : 0.0;
  r.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  r.f_measure = 2 * tp + fp + fn > 0 ? 2 * tp / (2 * tp + fp + fn) : 0.0;
  const double mcc_denom =
      std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
  r.mcc = mcc_denom > 0 ? (tp * tn - fp * fn) / mcc_denom : 0.0;
  r.dice = r.f_measure;
  r.jaccard = 2.0 - r.dice > 0 ? r.dice / (2.0 - r.dice) : 0.0;
  r.iou = r.jaccard;
  r.fnr = 1.0 - r.sensitivity;
  r.fpr = 1.0 - r.specificity;
  return r;
}

RocCurve roc_auc(std::span<const double> scores, std::span<const GroundTruth> gt) {
  if (scores.size() != gt.size())
    throw ParameterError("roc_auc: score and ground-truth lengths differ");
  std::int64_t n_pos = 0, n_neg = 0;
  for (const GroundTruth g : gt) (g == GroundTruth::kLesion ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    throw ParameterError("roc_auc: both classes must be present, AUC undefined");

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back(RocPoint{std::numeric_limits<double>::infinity(), 0.0, 0.0});
  double tp = 0, fp = 0;
  double auc = 0, prev_fpr = 0, prev_tpr = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    // consume the whole tie group at this threshold
    while (i < order.size() && scores[order[i]] == threshold) {
      if (gt[order[i]] == GroundTruth::kLesion)
        tp += 1;
      else
        fp += 1;
      ++i;
    }
    const double tpr = tp / static_cast<double>(n_pos);
    const double fpr = fp / static_cast<double>(n_neg);
    auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    curve.points.push_back(RocPoint{threshold, fpr, tpr});
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  curve.auc = auc;
  return curve;
}

std::pair<MetricReport, MetricReport> pc_op_aggregate(std::span<const Confusion> per_class) {
  if (per_class.empty()) throw ParameterError("pc_op_aggregate: need at least one class");

  MetricReport pc;
  pc.aggregation = Aggregation::kPerClass;
  Confusion pooled;
  for (const Confusion& c : per_class) {
    const MetricReport r = report(c);
    pc.accuracy += r.accuracy;
    pc.sensitivity += r.sensitivity;
    pc.specificity += r.specificity;
    pc.precision += r.precision;
    pc.f_measure += r.f_measure;
    pc.mcc += r.mcc;
    pc.dice += r.dice;
    pc.jaccard += r.jaccard;
    pc.iou += r.iou;
    pc.fnr += r.fnr;
    pc.fpr += r.fpr;
    pooled = pooled + c;
  }
  const double k = static_cast<double>(per_class.size());
  pc.accuracy /= k;
  pc.sensitivity /= k;
  pc.specificity /= k;
  pc.precision /= k;
  pc.f_measure /= k;
  pc.mcc /= k;
  pc.dice /= k;
  pc.jaccard /= k;
  pc.iou /= k;
  pc.fnr /= k;
  pc.fpr /= k;

  MetricReport op = report(pooled);
  op.aggregation = Aggregation::kOverallPixel;
  return {pc, op};
}

double speed_performance_index(double accuracy, double frames_per_second, double reference_fps) {
  if (frames_per_second <= 0 || reference_fps <= 0)
    throw ParameterError("speed_performance_index: fps values must be positive");
  return accuracy * std::min(1.0, frames_per_second / reference_fps);
}

}  // namespace octx
