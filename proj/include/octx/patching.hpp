#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "octx/glcm.hpp"
#include "octx/image.hpp"

namespace octx {

enum class GroundTruth : std::uint8_t { kBackground = 0, kLesion = 1 };
enum class Split : std::uint8_t { kTrain = 0, kValidation = 1, kTest = 2 };

/// The four lesion classes: gastric ulcer, red spots, polyps, bleeding.
enum class LesionClass : std::uint8_t { kGU = 0, kGRS = 1, kGPs = 2, kGB = 3 };
inline constexpr int kLesionClassCount = 4;

std::string to_string(LesionClass c);
LesionClass lesion_class_from_string(const std::string& s);

/// Rotated ellipse in pixel coordinates. `angle` in radians, measured from
/// the +x axis to the semi-axis `a`.
struct Ellipse {
  double cx = 0, cy = 0;
  double a = 1, b = 1;
  double angle = 0;

  bool contains(double x, double y) const;
};

struct LesionMask {
  std::vector<Ellipse> ellipses;
  LesionClass class_label = LesionClass::kGU;
};

/// One non-overlapping P x P patch of a frame. `features` describes the
/// identity twin x+, `features_minus` the intensity-complement twin x-.
struct PatchRecord {
  std::int64_t patch_id = -1;
  std::int64_t frame_id = -1;
  int grid_x = 0;
  int grid_y = 0;
  FeatureVector features = FeatureVector::Zero();
  FeatureVector features_minus = FeatureVector::Zero();
  double score = 0.0;
  GroundTruth gt = GroundTruth::kBackground;
  Split split = Split::kTrain;
};

/// floor(w/P) x floor(h/P) patch records in row-major order, features unset.
/// Right and bottom remainder pixels are dropped, never padded.
/// Throws ParameterError when P < 2 or no patch fits.
std::vector<PatchRecord> decompose(const GrayImage& img, int patch_size, std::int64_t frame_id = 0,
                                   std::int64_t first_patch_id = 0);

/// View of the pixels belonging to one patch record.
GrayImage patch_pixels(const GrayImage& img, const PatchRecord& rec, int patch_size);

/// Set gt = lesion on every patch whose in-ellipse pixel fraction (over any
/// mask, pixel centers) reaches overlap_threshold.
void label_patches(std::vector<PatchRecord>& patches, std::span<const LesionMask> masks,
                   int patch_size, double overlap_threshold = 0.5);

/// Fraction of the patch's pixel centers inside any ellipse of any mask.
double patch_overlap_fraction(const PatchRecord& rec, std::span<const LesionMask> masks, int patch_size);

/// Frame-atomic split: all patches of a frame land in the same subset.
/// `ratio` is the train fraction (paper protocol 7:3). Deterministic in seed.
void split_dataset(std::vector<PatchRecord>& patches, double ratio, std::uint64_t seed);

}  // namespace octx
