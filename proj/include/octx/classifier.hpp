#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "octx/glcm.hpp"
#include "octx/patching.hpp"

namespace octx {

using Vector4 = Eigen::Vector4d;

enum class BinaryLabel : std::uint8_t { kN = 0, kP = 1 };
enum class TwinSign : std::uint8_t { kPlus = 0, kMinus = 1 };

/// Compound classes in fixed vector order (P+, P-, N+, N-).
enum class CompoundClass : int { kPPlus = 0, kPMinus = 1, kNPlus = 2, kNMinus = 3 };
inline constexpr int kCompoundClassCount = 4;

constexpr CompoundClass compound_label(BinaryLabel y, TwinSign sign) {
  return y == BinaryLabel::kP
             ? (sign == TwinSign::kPlus ? CompoundClass::kPPlus : CompoundClass::kPMinus)
             : (sign == TwinSign::kPlus ? CompoundClass::kNPlus : CompoundClass::kNMinus);
}

/// Patch classifier over the four compound classes. Implementations must
/// return a probability 4-vector from predict().
class ClassifierModel {
 public:
  virtual ~ClassifierModel() = default;
  virtual Vector4 predict(const FeatureVector& f) const = 0;
  virtual void fit(const Eigen::Ref<const Matrix>& instances, std::span<const int> labels,
                   int epochs, double learning_rate) = 0;
  virtual std::unique_ptr<ClassifierModel> clone() const = 0;
};

/// Mean 4-class cross-entropy of softmax(W^T x + b) over the batch, and its
/// analytic gradient. Kept as free functions so finite-difference checks can
/// probe the exact objective fit() descends.
double softmax_loss(const Matrix& weights, const Vector4& bias,
                    const Eigen::Ref<const Matrix>& instances, std::span<const int> labels);
void softmax_loss_grad(const Matrix& weights, const Vector4& bias,
                       const Eigen::Ref<const Matrix>& instances, std::span<const int> labels,
                       Matrix& grad_weights, Vector4& grad_bias);

/// Built-in lightweight model: 22x4 weight matrix plus 4 biases. fit() runs
/// full-batch gradient descent in standardized feature space and folds the
/// standardization back into (weights, bias), so predict() stays a plain
/// affine-softmax map.
class LinearSoftmaxModel final : public ClassifierModel {
 public:
  explicit LinearSoftmaxModel(std::uint64_t seed = 0);

  Vector4 predict(const FeatureVector& f) const override;
  void fit(const Eigen::Ref<const Matrix>& instances, std::span<const int> labels, int epochs,
           double learning_rate) override;
  std::unique_ptr<ClassifierModel> clone() const override;

  const Matrix& weights() const { return weights_; }
  const Vector4& bias() const { return bias_; }
  void set_parameters(Matrix weights, Vector4 bias);

  /// Loss of the current parameters on a batch (used by monotonicity tests).
  double loss(const Eigen::Ref<const Matrix>& instances, std::span<const int> labels) const;

 private:
  Matrix weights_;  // kFeatureCount x 4
  Vector4 bias_;
};

/// Twin training batch: each patch contributes its x+ features labeled
/// (y, +) and its x- features labeled (y, -).
struct TwinBatch {
  Matrix instances;         // n x kFeatureCount
  std::vector<int> labels;  // CompoundClass as int
};

TwinBatch make_twin_batch(std::span<const PatchRecord> patches,
                          std::span<const std::int64_t> positive_ids,
                          std::span<const std::int64_t> negative_ids);

/// Fit `model` on the rp/ns batches under compound labels. Throws when both
/// id lists are empty. Deterministic: all stochasticity lives in the model's
/// seeded construction.
void train_classifier(ClassifierModel& model, std::span<const PatchRecord> patches,
                      std::span<const std::int64_t> rp_ids, std::span<const std::int64_t> ns_ids,
                      int epochs, double learning_rate);

}  // namespace octx
