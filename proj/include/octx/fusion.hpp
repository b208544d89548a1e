#pragma once

#include <array>
#include <span>

#include "octx/classifier.hpp"
#include "octx/image.hpp"

namespace octx {

/// The two deterministic transforms of one input: x+ is the identity, x- the
/// intensity complement (an involution).
struct TwinPair {
  GrayImage x_plus;
  GrayImage x_minus;
  std::int64_t origin_id = -1;
};

TwinPair make_twins(const GrayImage& img, std::int64_t origin_id = -1);

struct FusedDecision {
  BinaryLabel label = BinaryLabel::kN;
  double confidence = 0;
};

/// Twin fusion rule cascade:
///    1. argmax theta == N+ and argmax psi == N-  ->  N
///   2. argmax theta == P+ and argmax psi == P-  ->  P
///   3. otherwise N iff the largest N-component across both vectors strictly
///      exceeds the largest P-component; ties resolve to P.
/// Confidence is the winning side's largest component.
FusedDecision fuse(const Vector4& theta, const Vector4& psi);

struct TwinPrediction {
  Vector4 theta = Vector4::Zero();
  Vector4 psi = Vector4::Zero();
  BinaryLabel fused = BinaryLabel::kN;
  double confidence = 0;
};

TwinPrediction predict_twin(const ClassifierModel& model, const FeatureVector& features_plus,
                            const FeatureVector& features_minus);

/// Four one-vs-rest twin-cross models, one per lesion class.
struct SubnetBank {
  std::array<LinearSoftmaxModel, kLesionClassCount> nets{
      LinearSoftmaxModel{0}, LinearSoftmaxModel{0}, LinearSoftmaxModel{0}, LinearSoftmaxModel{0}};
};

/// Per-subnet fused decisions D1..D4 plus class probabilities P1..P4:
/// positive confidences normalized across firing subnets, uniform when no
/// subnet fires.
struct ClassPosterior {
  Vector4 p = Vector4::Constant(0.25);
  std::array<BinaryLabel, kLesionClassCount> d{BinaryLabel::kN, BinaryLabel::kN, BinaryLabel::kN,
                                               BinaryLabel::kN};
};

ClassPosterior predict_subnets(const SubnetBank& bank, const FeatureVector& features_plus,
                               const FeatureVector& features_minus);

/// Per-class scalar fields over the patch grid; posteriors in row-major
/// patch order, one per grid cell.
std::array<Matrix, kLesionClassCount> heatmap(int grid_cols, int grid_rows,
                                              std::span<const ClassPosterior> posteriors);

}  // namespace octx
