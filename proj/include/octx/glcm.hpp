#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "octx/errors.hpp"
#include "octx/image.hpp"

namespace octx {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr int kFeatureCount = 22;
using FeatureVector = Eigen::Matrix<double, kFeatureCount, 1>;

/// Pixel displacement (dx, dy): the co-occurring partner of (col, row) is
/// (col + dx, row + dy).
struct Offset {
  int dx = 1;
  int dy = 0;
};

/// Gray-level co-occurrence matrix at one displacement.
struct CoMatrix {
  int levels = 0;
  Offset offset;
  bool symmetric = false;
  Matrix counts;      ///< raw pair counts, levels x levels
  Matrix normalized;  ///< counts / total, sums to 1
};

/// Texture feature catalog. The first 20 are the classic Haralick set plus
/// its common normalized extensions; the last two are the product-moment
/// correlation estimator and the inverse-difference-moment homogeneity
/// variant that complete the 22-feature catalog (see docs/features.md).
enum FeatureId : int {
  kAutocorrelation = 0,
  kContrast,
  kCorrelation,
  kClusterProminence,
  kClusterShade,
  kDissimilarity,
  kEnergy,
  kEntropy,
  kHomogeneity,
  kMaximumProbability,
  kVariance,
  kSumAverage,
  kSumVariance,
  kSumEntropy,
  kDifferenceVariance,
  kDifferenceEntropy,
  kInfoCorrelation1,
  kInfoCorrelation2,
  kInverseDifferenceNormalized,
  kInverseDifferenceMomentNormalized,
  kCorrelationProduct,
  kInverseDifferenceMoment,
};

const std::array<std::string_view, kFeatureCount>& feature_names();

/// FNV-1a hash of the joined feature names; stamped into model files so a
/// model is never silently applied to a different catalog.
std::string feature_catalog_hash();

/// Build the co-occurrence matrix of `img` at `offset`. Intensities already
/// inside [0, levels) are used as bin indices directly; otherwise the image
/// is quantized first (floor(v * levels / 256)). Throws ParameterError when
/// the offset admits no pixel pair.
CoMatrix cooccurrence(const GrayImage& img, int levels, Offset offset, bool symmetric);

/// All 22 texture features of a normalized co-occurrence matrix expression.
/// Conventions: natural-log entropies with 0*log(0) = 0; features that divide
/// by a marginal standard deviation return 0 when that deviation is 0.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, kFeatureCount, 1> features(const Eigen::MatrixBase<Derived>& glcm) {
  using Scalar = typename Derived::Scalar;
  using Feat = Eigen::Matrix<Scalar, kFeatureCount, 1>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> p = glcm.derived();
  const Eigen::Index n = p.rows();
  if (n != p.cols() || n < 1) throw ParameterError("features: matrix must be square and non-empty");
  if (std::abs(static_cast<double>(p.sum()) - 1.0) > 1e-9)
    throw ParameterError("features: matrix must be normalized (entries summing to 1)");

  const auto xlogx = [](Scalar v) { return v > Scalar(0) ? v * std::log(v) : Scalar(0); };

  const Vec px = p.rowwise().sum();
  const Vec py = p.colwise().sum().transpose();
  const Vec idx = Vec::LinSpaced(n, Scalar(0), Scalar(n - 1));
  const Scalar mu_x = idx.dot(px);
  const Scalar mu_y = idx.dot(py);
  const Scalar var_x = (idx.array() - mu_x).square().matrix().dot(px);
  const Scalar var_y = (idx.array() - mu_y).square().matrix().dot(py);
  const Scalar sigma_xy = std::sqrt(var_x) * std::sqrt(var_y);

  // diagonal-band marginals p_{x+y} and p_{|x-y|}
  Vec p_sum = Vec::Zero(2 * n - 1);
  Vec p_diff = Vec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      p_sum(i + j) += p(i, j);
      p_diff(std::abs(i - j)) += p(i, j);
    }

  Scalar autocorr = 0, contrast = 0, corr_cross = 0, prominence = 0, shade = 0;
  Scalar dissim = 0, energy = 0, entropy = 0, homogeneity = 0, variance = 0;
  Scalar inn = 0, idn = 0, idm = 0;
  Scalar hxy1 = 0, hxy2 = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar v = p(i, j);
      const Scalar fi = static_cast<Scalar>(i);
      const Scalar fj = static_cast<Scalar>(j);
      const Scalar d = fi - fj;
      const Scalar s = fi + fj - mu_x - mu_y;
      autocorr += fi * fj * v;
      contrast += d * d * v;
      corr_cross += (fi - mu_x) * (fj - mu_y) * v;
      prominence += s * s * s * s * v;
      shade += s * s * s * v;
      dissim += std::abs(d) * v;
      energy += v * v;
      entropy -= xlogx(v);
      homogeneity += v / (Scalar(1) + std::abs(d));
      variance += (fi - mu_x) * (fi - mu_x) * v;
      inn += v / (Scalar(1) + std::abs(d) / Scalar(n));
      idn += v / (Scalar(1) + d * d / Scalar(n * n));
      idm += v / (Scalar(1) + d * d);
      const Scalar marg = px(i) * py(j);
      if (v > Scalar(0) && marg > Scalar(0)) hxy1 -= v * std::log(marg);
      hxy2 -= xlogx(marg);
    }
  }

  const Scalar sum_avg = Vec::LinSpaced(2 * n - 1, Scalar(0), Scalar(2 * n - 2)).dot(p_sum);
  Scalar sum_var = 0, sum_ent = 0;
  for (Eigen::Index k = 0; k < 2 * n - 1; ++k) {
    sum_var += (Scalar(k) - sum_avg) * (Scalar(k) - sum_avg) * p_sum(k);
    sum_ent -= xlogx(p_sum(k));
  }
  const Scalar diff_avg = Vec::LinSpaced(n, Scalar(0), Scalar(n - 1)).dot(p_diff);
  Scalar diff_var = 0, diff_ent = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    diff_var += (Scalar(k) - diff_avg) * (Scalar(k) - diff_avg) * p_diff(k);
    diff_ent -= xlogx(p_diff(k));
  }

  Scalar hx = 0, hy = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    hx -= xlogx(px(i));
    hy -= xlogx(py(i));
  }
  const Scalar hmax = std::max(hx, hy);
  const Scalar imc1 = hmax > Scalar(0) ? (entropy - hxy1) / hmax : Scalar(0);
  const Scalar imc2 = std::sqrt(std::max(Scalar(0), Scalar(1) - std::exp(Scalar(-2) * (hxy2 - entropy))));

  Feat f;
  f(kAutocorrelation) = autocorr;
  f(kContrast) = contrast;
  f(kCorrelation) = sigma_xy > Scalar(0) ? corr_cross / sigma_xy : Scalar(0);
  f(kClusterProminence) = prominence;
  f(kClusterShade) = shade;
  f(kDissimilarity) = dissim;
  f(kEnergy) = energy;
  f(kEntropy) = entropy;
  f(kHomogeneity) = homogeneity;
  f(kMaximumProbability) = p.maxCoeff();
  f(kVariance) = variance;
  f(kSumAverage) = sum_avg;
  f(kSumVariance) = sum_var;
  f(kSumEntropy) = sum_ent;
  f(kDifferenceVariance) = diff_var;
  f(kDifferenceEntropy) = diff_ent;
  f(kInfoCorrelation1) = imc1;
  f(kInfoCorrelation2) = imc2;
  f(kInverseDifferenceNormalized) = inn;
  f(kInverseDifferenceMomentNormalized) = idn;
  f(kCorrelationProduct) = sigma_xy > Scalar(0) ? (autocorr - mu_x * mu_y) / sigma_xy : Scalar(0);
  f(kInverseDifferenceMoment) = idm;
  return f;
}

FeatureVector features(const CoMatrix& m);

inline std::span<const Offset> default_offsets() {
  static const std::array<Offset, 2> offs{Offset{1, 0}, Offset{0, 1}};
  return offs;
}

/// Per-patch feature vector: quantize, build one GLCM per offset, average the
/// feature vectors across offsets.
FeatureVector extract_features(const GrayImage& patch, int levels = 8,
                               std::span<const Offset> offsets = default_offsets(),
                               bool symmetric = true);

/// Sigmoid-squashed weighted feature sum; always in [0, 1] and strictly
/// increasing in any feature with positive weight.
double fuse_score(const FeatureVector& f, const FeatureVector& weights);

/// Fusion weights calibrated on the synthetic generator defaults.
FeatureVector default_fuse_weights();

}  // namespace octx
