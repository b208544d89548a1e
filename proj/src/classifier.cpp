#include "octx/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "octx/rng.hpp"

namespace octx {

namespace {

Vector4 softmax(const Vector4& z) {
  const Vector4 shifted = z.array() - z.maxCoeff();
  const Vector4 e = shifted.array().exp();
  return e / e.sum();
}

void check_batch(const Eigen::Ref<const Matrix>& X, std::span<const int> y) {
  if (X.rows() != static_cast<Index>(y.size()))
    throw ParameterError("classifier: instance and label counts differ");
  if (X.cols() != kFeatureCount)
    throw ParameterError("classifier: instances must have one column per feature");
  for (const int label : y)
    if (label < 0 || label >= kCompoundClassCount)
      throw ParameterError("classifier: label outside the compound class range");
}

}  // namespace

double softmax_loss(const Matrix& W, const Vector4& b, const Eigen::Ref<const Matrix>& X,
                    std::span<const int> y) {
  check_batch(X, y);
  const Index n = X.rows();
  double loss = 0;
  for (Index i = 0; i < n; ++i) {
    const Vector4 z = W.transpose() * X.row(i).transpose() + b;
    const Vector4 p = softmax(z);
    loss -= std::log(std::max(p(y[static_cast<std::size_t>(i)]), 1e-300));
  }
  return loss / static_cast<double>(n);
}

void softmax_loss_grad(const Matrix& W, const Vector4& b, const Eigen::Ref<const Matrix>& X,
                       std::span<const int> y, Matrix& gW, Vector4& gb) {
  check_batch(X, y);
  const Index n = X.rows();
  gW = Matrix::Zero(kFeatureCount, kCompoundClassCount);
  gb = Vector4::Zero();
  for (Index i = 0; i < n; ++i) {
    const Vector4 z = W.transpose() * X.row(i).transpose() + b;
    Vector4 delta = softmax(z);
    delta(y[static_cast<std::size_t>(i)]) -= 1.0;
    gW += X.row(i).transpose() * delta.transpose();
    gb += delta;
  }
  gW /= static_cast<double>(n);
  gb /= static_cast<double>(n);
}

LinearSoftmaxModel::LinearSoftmaxModel(std::uint64_t seed)
    : weights_(Matrix::Zero(kFeatureCount, kCompoundClassCount)), bias_(Vector4::Zero()) {
  Rng rng = Rng::derived(seed, /*tag=*/0x11 /* classifier init */);
  for (Index r = 0; r < weights_.rows(); ++r)
    for (Index c = 0; c < weights_.cols(); ++c) weights_(r, c) = 0.01 * rng.normal();
}

Vector4 LinearSoftmaxModel::predict(const FeatureVector& f) const {
  return softmax(weights_.transpose() * f + bias_);
}

void LinearSoftmaxModel::set_parameters(Matrix weights, Vector4 bias) {
  if (weights.rows() != kFeatureCount || weights.cols() != kCompoundClassCount)
    throw ParameterError("set_parameters: weight matrix must be 22x4");
  weights_ = std::move(weights);
  bias_ = std::move(bias);
}

double LinearSoftmaxModel::loss(const Eigen::Ref<const Matrix>& X, std::span<const int> y) const {
  return softmax_loss(weights_, bias_, X, y);
}

void LinearSoftmaxModel::fit(const Eigen::Ref<const Matrix>& X, std::span<const int> y, int epochs,
                             double lr) {
  check_batch(X, y);
  if (epochs < 0) throw ParameterError("fit: epochs must be non-negative");
  if (epochs == 0) return;
  if (X.rows() == 0) throw ParameterError("fit: empty training batch");

  // standardize per feature; constant columns pass through untouched
  const Eigen::RowVectorXd mean = X.colwise().mean();
  Eigen::RowVectorXd stddev(kFeatureCount);
  for (Index c = 0; c < kFeatureCount; ++c) {
    const double var = (X.col(c).array() - mean(c)).square().mean();
    stddev(c) = var > 1e-18 ? std::sqrt(var) : 1.0;
  }
  Matrix Xs = (X.rowwise() - mean).array().rowwise() / stddev.array();

  // lift current parameters into standardized space so repeated fits refine
  // rather than restart
  Matrix W = weights_.array().colwise() * stddev.transpose().array();
  Vector4 b = bias_ + weights_.transpose() * mean.transpose();

  Matrix gW;
  Vector4 gb;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    softmax_loss_grad(W, b, Xs, y, gW, gb);
    W -= lr * gW;
    b -= lr * gb;
  }

  // fold the standardization back into an affine map on raw features
  weights_ = W.array().colwise() / stddev.transpose().array();
  bias_ = b - weights_.transpose() * mean.transpose();
}

std::unique_ptr<ClassifierModel> LinearSoftmaxModel::clone() const {
  return std::make_unique<LinearSoftmaxModel>(*this);
}

TwinBatch make_twin_batch(std::span<const PatchRecord> patches,
                          std::span<const std::int64_t> positive_ids,
                          std::span<const std::int64_t> negative_ids) {
  std::unordered_map<std::int64_t, const PatchRecord*> by_id;
  by_id.reserve(patches.size());
  for (const PatchRecord& rec : patches) by_id.emplace(rec.patch_id, &rec);

  const auto lookup = [&](std::int64_t id) -> const PatchRecord& {
    const auto it = by_id.find(id);
    if (it == by_id.end())
      throw ParameterError("make_twin_batch: unknown patch id " + std::to_string(id));
    return *it->second;
  };

  TwinBatch batch;
  const Index n = 2 * static_cast<Index>(positive_ids.size() + negative_ids.size());
  batch.instances.resize(n, kFeatureCount);
  batch.labels.reserve(static_cast<std::size_t>(n));
  Index row = 0;
  const auto add = [&](const PatchRecord& rec, BinaryLabel y) {
    batch.instances.row(row++) = rec.features.transpose();
    batch.labels.push_back(static_cast<int>(compound_label(y, TwinSign::kPlus)));
    batch.instances.row(row++) = rec.features_minus.transpose();
    batch.labels.push_back(static_cast<int>(compound_label(y, TwinSign::kMinus)));
  };
  for (const std::int64_t id : positive_ids) add(lookup(id), BinaryLabel::kP);
  for (const std::int64_t id : negative_ids) add(lookup(id), BinaryLabel::kN);
  return batch;
}

void train_classifier(ClassifierModel& model, std::span<const PatchRecord> patches,
                      std::span<const std::int64_t> rp_ids, std::span<const std::int64_t> ns_ids,
                      int epochs, double learning_rate) {
  if (rp_ids.empty() && ns_ids.empty())
    throw ParameterError("train_classifier: rp and ns are both empty");
  const TwinBatch batch = make_twin_batch(patches, rp_ids, ns_ids);
  model.fit(batch.instances, batch.labels, epochs, learning_rate);
}

}  // namespace octx
