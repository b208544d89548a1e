#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "octx/image.hpp"
#include "octx/patching.hpp"

namespace octx {

/// Filtered-noise texture parameters for one class of tissue.
struct ClassTexture {
  double base_intensity = 128;  ///< mean gray value
  int correlation_length = 2;   ///< box-filter radius of the noise field
  double amplitude = 40;        ///< peak deviation around the base
};

struct GeneratorConfig {
  int frame_width = 256;
  int frame_height = 256;
  int n_frames = 100;
  std::array<double, kLesionClassCount> class_mix{0.25, 0.25, 0.25, 0.25};
  int min_lesions_per_frame = 1;
  int max_lesions_per_frame = 2;
  double min_semi_axis = 24;
  double max_semi_axis = 56;
  ClassTexture background{120.0, 6, 14.0};
  std::array<ClassTexture, kLesionClassCount> lesion_textures{
      ClassTexture{95.0, 1, 90.0},    // GU: fine-grained, strong contrast
      ClassTexture{160.0, 2, 70.0},   // GRS: bright speckle
      ClassTexture{110.0, 4, 60.0},   // GPs: coarse blobs
      ClassTexture{70.0, 1, 110.0},   // GB: dark, highest amplitude
  };
  double label_noise_rate = 0.0;  ///< applied at patch-labeling time
  std::uint64_t seed = 42;
};

struct SynthFrame {
  std::int64_t frame_id = 0;
  GrayImage image;
  std::vector<LesionMask> masks;
};

struct SynthDataset {
  GeneratorConfig config;
  std::vector<SynthFrame> frames;
};

/// Deterministic dataset synthesis; every frame derives its own RNG stream
/// from (seed, frame_id), so generation order never matters.
SynthDataset generate(const GeneratorConfig& config);

/// Single frame (used by parallel drivers and augmentation tests).
SynthFrame generate_frame(const GeneratorConfig& config, std::int64_t frame_id);

/// Which ids were flipped by plant_noise; the oracle for agent benchmarks.
struct NoiseOracle {
  double rate = 0.0;
  std::vector<std::int64_t> flipped_ids;
};

/// Flip exactly llround(rate * n) patch labels, chosen uniformly.
NoiseOracle plant_noise(std::vector<PatchRecord>& patches, double rate, std::uint64_t seed);

enum class AugmentOp : std::uint8_t {
  kRotate90 = 0,
  kRotate180,
  kRotate270,
  kFlipHorizontal,
  kFlipVertical,
  kIntensityJitter,
};

/// Apply one geometric/intensity op; masks are transformed with the image.
/// `jitter_delta` only applies to kIntensityJitter (additive, clamped).
SynthFrame apply_augment(const SynthFrame& frame, AugmentOp op, int jitter_delta = 0);

/// One augmented frame per op; jitter deltas drawn from the seeded stream.
std::vector<SynthFrame> augment(const SynthFrame& frame, std::span<const AugmentOp> ops,
                                std::uint64_t seed);

}  // namespace octx
