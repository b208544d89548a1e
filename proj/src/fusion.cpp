#include "octx/fusion.hpp"

#include <cmath>

namespace octx {

namespace {

void check_probability_vector(const Vector4& v, const char* name) {
  if (!(v.array() >= 0.0).all() || std::abs(v.sum() - 1.0) > 1e-9)
    throw ParameterError(std::string("fuse: ") + name + " is not a probability vector");
}

int argmax4(const Vector4& v) {
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (v(i) > v(best)) best = i;
  return best;
}

}  // namespace

TwinPair make_twins(const GrayImage& img, std::int64_t origin_id) {
  return TwinPair{img, complement(img), origin_id};
}

FusedDecision fuse(const Vector4& theta, const Vector4& psi) {
  check_probability_vector(theta, "theta");
  check_probability_vector(psi, "psi");

  constexpr int kPP = static_cast<int>(CompoundClass::kPPlus);
  constexpr int kPM = static_cast<int>(CompoundClass::kPMinus);
  constexpr int kNP = static_cast<int>(CompoundClass::kNPlus);
  constexpr int kNM = static_cast<int>(CompoundClass::kNMinus);

  const double n_max = std::max({theta(kNP), theta(kNM), psi(kNP), psi(kNM)});
  const double p_max = std::max({theta(kPP), theta(kPM), psi(kPP), psi(kPM)});

  const int am_theta = argmax4(theta);
  const int am_psi = argmax4(psi);
  if (am_theta == kNP && am_psi == kNM) return {BinaryLabel::kN, n_max};
  if (am_theta == kPP && am_psi == kPM) return {BinaryLabel::kP, p_max};
  if (n_max > p_max) return {BinaryLabel::kN, n_max};
  return {BinaryLabel::kP, p_max};
}

TwinPrediction predict_twin(const ClassifierModel& model, const FeatureVector& features_plus,
                            const FeatureVector& features_minus) {
  TwinPrediction pred;
  pred.theta = model.predict(features_plus);
  pred.psi = model.predict(features_minus);
  const FusedDecision d = fuse(pred.theta, pred.psi);
  pred.fused = d.label;
  pred.confidence = d.confidence;
  return pred;
}

ClassPosterior predict_subnets(const SubnetBank& bank, const FeatureVector& features_plus,
                               const FeatureVector& features_minus) {
  ClassPosterior post;
  Vector4 confidence = Vector4::Zero();
  double total = 0;
  for (int k = 0; k < kLesionClassCount; ++k) {
    const TwinPrediction pred = predict_twin(bank.nets[static_cast<std::size_t>(k)], features_plus,
                                             features_minus);
    post.d[static_cast<std::size_t>(k)] = pred.fused;
    if (pred.fused == BinaryLabel::kP) {
      confidence(k) = pred.confidence;
      total += pred.confidence;
    }
  }
  post.p = total > 0 ? Vector4(confidence / total) : Vector4::Constant(0.25);
  return post;
}

std::array<Matrix, kLesionClassCount> heatmap(int grid_cols, int grid_rows,
                                              std::span<const ClassPosterior> posteriors) {
  if (grid_cols < 1 || grid_rows < 1)
    throw ParameterError("heatmap: grid dimensions must be positive");
  if (posteriors.size() != static_cast<std::size_t>(grid_cols) * static_cast<std::size_t>(grid_rows))
    throw ParameterError("heatmap: posterior count does not cover the grid");

  std::array<Matrix, kLesionClassCount> fields;
  for (auto& f : fields) f = Matrix::Zero(grid_rows, grid_cols);
  std::size_t i = 0;
  for (int r = 0; r < grid_rows; ++r)
    for (int c = 0; c < grid_cols; ++c, ++i)
      for (int k = 0; k < kLesionClassCount; ++k)
        fields[static_cast<std::size_t>(k)](r, c) = posteriors[i].p(k);
  return fields;
}

}  // namespace octx
