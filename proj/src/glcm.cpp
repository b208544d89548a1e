#include "octx/glcm.hpp"

#include <cstdio>

namespace octx {

const std::array<std::string_view, kFeatureCount>& feature_names() {
  static const std::array<std::string_view, kFeatureCount> names{
      "autocorrelation",
      "contrast",
      "correlation",
      "cluster_prominence",
      "cluster_shade",
      "dissimilarity",
      "energy",
      "entropy",
      "homogeneity",
      "maximum_probability",
      "variance",
      "sum_average",
      "sum_variance",
      "sum_entropy",
      "difference_variance",
      "difference_entropy",
      "info_correlation_1",
      "info_correlation_2",
      "inverse_difference_normalized",
      "inverse_difference_moment_normalized",
      "correlation_product",
      "inverse_difference_moment",
  };
  return names;
}

std::string feature_catalog_hash() {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto name : feature_names()) {
    for (const char c : name) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 0x100000001b3ull;
    }
    h ^= static_cast<std::uint8_t>('\n');
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CoMatrix cooccurrence(const GrayImage& img, int levels, Offset offset, bool symmetric) {
  if (levels < 2 || levels > 256) throw ParameterError("cooccurrence: levels must be in [2, 256]");
  if (offset.dx == 0 && offset.dy == 0) throw ParameterError("cooccurrence: offset must be nonzero");

  const GrayImage* src = &img;
  GrayImage quantized_copy;
  if (static_cast<int>(img.pixels.maxCoeff()) >= levels) {
    quantized_copy = quantize(img, levels);
    src = &quantized_copy;
  }

  CoMatrix m;
  m.levels = levels;
  m.offset = offset;
  m.symmetric = symmetric;
  m.counts = Matrix::Zero(levels, levels);

  const Index h = src->height();
  const Index w = src->width();
  for (Index row = 0; row < h; ++row) {
    const Index row2 = row + offset.dy;
    if (row2 < 0 || row2 >= h) continue;
    for (Index col = 0; col < w; ++col) {
      const Index col2 = col + offset.dx;
      if (col2 < 0 || col2 >= w) continue;
      m.counts((*src)(row, col), (*src)(row2, col2)) += 1.0;
    }
  }

  if (symmetric) m.counts += m.counts.transpose().eval();
  const double total = m.counts.sum();
  if (total <= 0.0)
    throw ParameterError("cooccurrence: no valid pixel pairs for the given offset");
  m.normalized = m.counts / total;
  return m;
}

FeatureVector features(const CoMatrix& m) {
  if (m.normalized.size() == 0) throw ParameterError("features: co-occurrence matrix not normalized");
  return features(m.normalized);
}

FeatureVector extract_features(const GrayImage& patch, int levels, std::span<const Offset> offsets,
                               bool symmetric) {
  if (offsets.empty()) throw ParameterError("extract_features: need at least one offset");
  const GrayImage q = quantize(patch, levels);
  FeatureVector acc = FeatureVector::Zero();
  for (const Offset off : offsets) acc += features(cooccurrence(q, levels, off, symmetric));
  return acc / static_cast<double>(offsets.size());
}

double fuse_score(const FeatureVector& f, const FeatureVector& weights) {
  if (!f.allFinite() || !weights.allFinite())
    throw ParameterError("fuse_score: features and weights must be finite");
  return 1.0 / (1.0 + std::exp(-weights.dot(f)));
}

FeatureVector default_fuse_weights() {
  // Calibrated against the default synthetic generator: lesion textures carry
  // high contrast/dissimilarity and low energy/homogeneity relative to the
  // smooth background field.
  FeatureVector w = FeatureVector::Zero();
  w(kContrast) = 0.9;
  w(kDissimilarity) = 1.4;
  w(kEnergy) = -4.0;
  w(kHomogeneity) = -3.0;
  w(kDifferenceEntropy) = 1.2;
  w(kMaximumProbability) = -2.0;
  return w;
}

}  // namespace octx
