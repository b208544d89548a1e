#include "octx/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "octx/rng.hpp"

namespace octx {

namespace {

constexpr std::uint64_t kTagFrame = 0x51;
constexpr std::uint64_t kTagNoise = 0x52;
constexpr std::uint64_t kTagAugment = 0x53;

/// Correlated noise in [-1, 1]: white noise box-blurred at the correlation
/// length, then rescaled to full range.
Eigen::MatrixXd noise_field(int height, int width, int corr_len, Rng& rng) {
  Eigen::MatrixXd field(height, width);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) field(r, c) = rng.uniform(-1.0, 1.0);
  if (corr_len < 1) return field;

  // separable box blur via running sums
  const int radius = corr_len;
  Eigen::MatrixXd tmp(height, width);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      const int lo = std::max(0, c - radius);
      const int hi = std::min(width - 1, c + radius);
      tmp(r, c) = field.row(r).segment(lo, hi - lo + 1).mean();
    }
  for (int c = 0; c < width; ++c)
    for (int r = 0; r < height; ++r) {
      const int lo = std::max(0, r - radius);
      const int hi = std::min(height - 1, r + radius);
      field(r, c) = tmp.col(c).segment(lo, hi - lo + 1).mean();
    }
  const double peak = field.cwiseAbs().maxCoeff();
  if (peak > 0) field /= peak;
  return field;
}

std::uint8_t clamp_gray(double v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

LesionClass sample_class(const std::array<double, kLesionClassCount>& mix, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0;
  for (int k = 0; k < kLesionClassCount; ++k) {
    acc += mix[k];
    if (u < acc) return static_cast<LesionClass>(k);
  }
  return static_cast<LesionClass>(kLesionClassCount - 1);
}

void validate(const GeneratorConfig& cfg) {
  if (cfg.frame_width < 8 || cfg.frame_height < 8)
    throw ParameterError("generate: frame size too small");
  if (cfg.n_frames < 1) throw ParameterError("generate: n_frames must be >= 1");
  double mix_sum = 0;
  for (double m : cfg.class_mix) {
    if (m < 0) throw ParameterError("generate: class mix entries must be non-negative");
    mix_sum += m;
  }
  if (std::abs(mix_sum - 1.0) > 1e-9) throw ParameterError("generate: class mix must sum to 1");
  if (cfg.min_lesions_per_frame < 0 || cfg.max_lesions_per_frame < cfg.min_lesions_per_frame)
    throw ParameterError("generate: invalid lesions-per-frame range");
  if (!(cfg.label_noise_rate >= 0.0 && cfg.label_noise_rate < 1.0))
    throw ParameterError("generate: label noise rate must be in [0, 1)");
  if (cfg.min_semi_axis <= 0 || cfg.max_semi_axis < cfg.min_semi_axis)
    throw ParameterError("generate: invalid semi-axis range");
  const double margin = 2.0 * cfg.max_semi_axis;
  if (margin >= cfg.frame_width || margin >= cfg.frame_height)
    throw ParameterError("generate: max semi-axis too large for the frame");
}

}  // namespace

SynthFrame generate_frame(const GeneratorConfig& cfg, std::int64_t frame_id) {
  validate(cfg);
  Rng rng = Rng::derived(cfg.seed, kTagFrame, static_cast<std::uint64_t>(frame_id));

  const int w = cfg.frame_width;
  const int h = cfg.frame_height;

  SynthFrame frame;
  frame.frame_id = frame_id;
  frame.image = GrayImage(h, w);

  const Eigen::MatrixXd bg = noise_field(h, w, cfg.background.correlation_length, rng);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      frame.image(r, c) = clamp_gray(cfg.background.base_intensity + cfg.background.amplitude * bg(r, c));

  const int n_lesions = cfg.min_lesions_per_frame +
                        static_cast<int>(rng.uniform_int(
                            static_cast<std::uint64_t>(cfg.max_lesions_per_frame - cfg.min_lesions_per_frame + 1)));
  for (int i = 0; i < n_lesions; ++i) {
    LesionMask mask;
    mask.class_label = sample_class(cfg.class_mix, rng);

    Ellipse e;
    e.a = rng.uniform(cfg.min_semi_axis, cfg.max_semi_axis);
    e.b = rng.uniform(cfg.min_semi_axis, cfg.max_semi_axis);
    e.angle = rng.uniform(0.0, std::numbers::pi);
    const double margin = std::max(e.a, e.b);
    e.cx = rng.uniform(margin, w - margin);
    e.cy = rng.uniform(margin, h - margin);
    mask.ellipses.push_back(e);

    const ClassTexture& tex = cfg.lesion_textures[static_cast<int>(mask.class_label)];
    const Eigen::MatrixXd field = noise_field(h, w, tex.correlation_length, rng);
    const int r0 = std::max(0, static_cast<int>(std::floor(e.cy - margin)));
    const int r1 = std::min(h - 1, static_cast<int>(std::ceil(e.cy + margin)));
    const int c0 = std::max(0, static_cast<int>(std::floor(e.cx - margin)));
    const int c1 = std::min(w - 1, static_cast<int>(std::ceil(e.cx + margin)));
    for (int r = r0; r <= r1; ++r)
      for (int c = c0; c <= c1; ++c)
        if (e.contains(c + 0.5, r + 0.5))
          frame.image(r, c) = clamp_gray(tex.base_intensity + tex.amplitude * field(r, c));

    frame.masks.push_back(std::move(mask));
  }
  return frame;
}

SynthDataset generate(const GeneratorConfig& cfg) {
  validate(cfg);
  SynthDataset ds;
  ds.config = cfg;
  ds.frames.reserve(static_cast<std::size_t>(cfg.n_frames));
  for (int i = 0; i < cfg.n_frames; ++i) ds.frames.push_back(generate_frame(cfg, i));
  return ds;
}

NoiseOracle plant_noise(std::vector<PatchRecord>& patches, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate < 1.0)) throw ParameterError("plant_noise: rate must be in [0, 1)");
  NoiseOracle oracle;
  oracle.rate = rate;
  const auto n_flips = static_cast<std::size_t>(std::llround(rate * static_cast<double>(patches.size())));
  if (n_flips == 0) return oracle;

  std::vector<std::size_t> indices(patches.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  Rng rng = Rng::derived(seed, kTagNoise);
  std::vector<std::size_t> chosen = rng.sample(indices, n_flips);
  std::sort(chosen.begin(), chosen.end());
  for (const std::size_t i : chosen) {
    PatchRecord& rec = patches[i];
    rec.gt = rec.gt == GroundTruth::kLesion ? GroundTruth::kBackground : GroundTruth::kLesion;
    oracle.flipped_ids.push_back(rec.patch_id);
  }
  return oracle;
}

namespace {

Ellipse transform_ellipse(const Ellipse& e, AugmentOp op, double w, double h) {
  Ellipse out = e;
  switch (op) {
    case AugmentOp::kRotate90:  // (x, y) -> (h - y, x)
      out.cx = h - e.cy;
      out.cy = e.cx;
      out.angle = e.angle + std::numbers::pi / 2;
      break;
    case AugmentOp::kRotate180:
      out.cx = w - e.cx;
      out.cy = h - e.cy;
      break;
    case AugmentOp::kRotate270:  // (x, y) -> (y, w - x)
      out.cx = e.cy;
      out.cy = w - e.cx;
      out.angle = e.angle - std::numbers::pi / 2;
      break;
    case AugmentOp::kFlipHorizontal:
      out.cx = w - e.cx;
      out.angle = -e.angle;
      break;
    case AugmentOp::kFlipVertical:
      out.cy = h - e.cy;
      out.angle = -e.angle;
      break;
    case AugmentOp::kIntensityJitter:
      break;
  }
  return out;
}

}  // namespace

SynthFrame apply_augment(const SynthFrame& frame, AugmentOp op, int jitter_delta) {
  const Index h = frame.image.height();
  const Index w = frame.image.width();
  SynthFrame out;
  out.frame_id = frame.frame_id;

  switch (op) {
    case AugmentOp::kRotate90: {
      out.image = GrayImage(w, h);
      for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c) out.image(c, h - 1 - r) = frame.image(r, c);
      break;
    }
    case AugmentOp::kRotate180: {
      out.image = GrayImage(h, w);
      for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c) out.image(h - 1 - r, w - 1 - c) = frame.image(r, c);
      break;
    }
    case AugmentOp::kRotate270: {
      out.image = GrayImage(w, h);
      for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c) out.image(w - 1 - c, r) = frame.image(r, c);
      break;
    }
    case AugmentOp::kFlipHorizontal: {
      out.image = GrayImage(h, w);
      out.image.pixels = frame.image.pixels.rowwise().reverse();
      break;
    }
    case AugmentOp::kFlipVertical: {
      out.image = GrayImage(h, w);
      out.image.pixels = frame.image.pixels.colwise().reverse();
      break;
    }
    case AugmentOp::kIntensityJitter: {
      out.image = GrayImage(h, w);
      out.image.pixels = frame.image.pixels.unaryExpr([jitter_delta](std::uint8_t v) {
        return static_cast<std::uint8_t>(std::clamp(static_cast<int>(v) + jitter_delta, 0, 255));
      });
      break;
    }
  }

  for (const LesionMask& mask : frame.masks) {
    LesionMask m;
    m.class_label = mask.class_label;
    for (const Ellipse& e : mask.ellipses)
      m.ellipses.push_back(transform_ellipse(e, op, static_cast<double>(w), static_cast<double>(h)));
    out.masks.push_back(std::move(m));
  }
  return out;
}

std::vector<SynthFrame> augment(const SynthFrame& frame, std::span<const AugmentOp> ops,
                                std::uint64_t seed) {
  Rng rng = Rng::derived(seed, kTagAugment, static_cast<std::uint64_t>(frame.frame_id));
  std::vector<SynthFrame> out;
  out.reserve(ops.size());
  for (const AugmentOp op : ops) {
    const int delta = op == AugmentOp::kIntensityJitter
                          ? static_cast<int>(rng.uniform_int(41)) - 20
                          : 0;
    out.push_back(apply_augment(frame, op, delta));
  }
  return out;
}

}  // namespace octx
