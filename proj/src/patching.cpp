#include "octx/patching.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "octx/rng.hpp"

namespace octx {

std::string to_string(LesionClass c) {
  switch (c) {
    case LesionClass::kGU: return "GU";
    case LesionClass::kGRS: return "GRS";
    case LesionClass::kGPs: return "GPs";
    case LesionClass::kGB: return "GB";
  }
  throw ParameterError("to_string: invalid lesion class");
}

LesionClass lesion_class_from_string(const std::string& s) {
  if (s == "GU") return LesionClass::kGU;
  if (s == "GRS") return LesionClass::kGRS;
  if (s == "GPs") return LesionClass::kGPs;
  if (s == "GB") return LesionClass::kGB;
  throw ParseError("unknown lesion class: " + s);
}

bool Ellipse::contains(double x, double y) const {
  const double dx = x - cx;
  const double dy = y - cy;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double u = (dx * c + dy * s) / a;
  const double v = (-dx * s + dy * c) / b;
  return u * u + v * v <= 1.0;
}

std::vector<PatchRecord> decompose(const GrayImage& img, int patch_size, std::int64_t frame_id,
                                   std::int64_t first_patch_id) {
  if (patch_size < 2) throw ParameterError("decompose: patch size must be >= 2");
  const Index cols = img.width() / patch_size;
  const Index rows = img.height() / patch_size;
  if (cols < 1 || rows < 1)
    throw ParameterError("decompose: patch size exceeds image dimensions, no patches fit");

  std::vector<PatchRecord> out;
  out.reserve(static_cast<std::size_t>(rows * cols));
  std::int64_t id = first_patch_id;
  for (Index gy = 0; gy < rows; ++gy)
    for (Index gx = 0; gx < cols; ++gx) {
      PatchRecord rec;
      rec.patch_id = id++;
      rec.frame_id = frame_id;
      rec.grid_x = static_cast<int>(gx);
      rec.grid_y = static_cast<int>(gy);
      out.push_back(rec);
    }
  return out;
}

GrayImage patch_pixels(const GrayImage& img, const PatchRecord& rec, int patch_size) {
  const Index x0 = static_cast<Index>(rec.grid_x) * patch_size;
  const Index y0 = static_cast<Index>(rec.grid_y) * patch_size;
  if (x0 + patch_size > img.width() || y0 + patch_size > img.height())
    throw ParameterError("patch_pixels: patch lies outside the frame");
  GrayImage out;
  out.pixels = img.pixels.block(y0, x0, patch_size, patch_size);
  return out;
}

double patch_overlap_fraction(const PatchRecord& rec, std::span<const LesionMask> masks, int patch_size) {
  const double x0 = static_cast<double>(rec.grid_x) * patch_size;
  const double y0 = static_cast<double>(rec.grid_y) * patch_size;
  int inside = 0;
  for (int py = 0; py < patch_size; ++py)
    for (int px = 0; px < patch_size; ++px) {
      const double x = x0 + px + 0.5;
      const double y = y0 + py + 0.5;
      for (const LesionMask& mask : masks) {
        bool hit = false;
        for (const Ellipse& e : mask.ellipses)
          if (e.contains(x, y)) {
            hit = true;
            break;
          }
        if (hit) {
          ++inside;
          break;
        }
      }
    }
  return static_cast<double>(inside) / (static_cast<double>(patch_size) * patch_size);
}

void label_patches(std::vector<PatchRecord>& patches, std::span<const LesionMask> masks,
                   int patch_size, double overlap_threshold) {
  if (!(overlap_threshold > 0.0 && overlap_threshold <= 1.0))
    throw ParameterError("label_patches: overlap threshold must be in (0, 1]");
  for (PatchRecord& rec : patches) {
    const double frac = patch_overlap_fraction(rec, masks, patch_size);
    rec.gt = frac >= overlap_threshold ? GroundTruth::kLesion : GroundTruth::kBackground;
  }
}

void split_dataset(std::vector<PatchRecord>& patches, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ParameterError("split_dataset: ratio must be strictly inside (0, 1)");

  std::vector<std::int64_t> frames;
  for (const PatchRecord& rec : patches)
    if (std::find(frames.begin(), frames.end(), rec.frame_id) == frames.end())
      frames.push_back(rec.frame_id);
  if (frames.size() < 2) throw ParameterError("split_dataset: need at least 2 frames to split");

  std::sort(frames.begin(), frames.end());
  Rng rng = Rng::derived(seed, /*tag=*/0x5 /* split */);
  rng.shuffle(frames);

  std::size_t n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(frames.size())));
  n_train = std::clamp<std::size_t>(n_train, 1, frames.size() - 1);

  std::map<std::int64_t, Split> assignment;
  for (std::size_t i = 0; i < frames.size(); ++i)
    assignment[frames[i]] = i < n_train ? Split::kTrain : Split::kTest;
  for (PatchRecord& rec : patches) rec.split = assignment.at(rec.frame_id);
}

}  // namespace octx
