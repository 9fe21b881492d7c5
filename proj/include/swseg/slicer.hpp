#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swseg/cloud.hpp"
#include "swseg/projection.hpp"

namespace swseg {

class SlicerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Serial runs the reference loops; Parallel runs the OpenMP kernels.
enum class Exec { Serial, Parallel };

struct SlicerConfig {
  int theta = 64;                ///< maximum core width in voxels
  double threshold_frac = 0.05;  ///< minimum slice size as a fraction of the original cloud
  int overlap = 2;               ///< inward overlap lines per slice
  PlaneRule plane_rule = PlaneRule::BestPlane;

  /// Throws SlicerError when a field is out of range.
  void validate() const;
};

/// A lone voxel is never an ordinary slice; it ends up in the terminal segment.
inline constexpr std::size_t kMinSlicePoints = 2;

/// Whether `count` points qualify as an ordinary slice.
bool meets_threshold(std::size_t count, const SlicerConfig& config, std::size_t original_size);

struct SliceSpec {
  std::size_t index = 0;
  Side side;
  AxisRange core;
  AxisRange extended;
  std::size_t point_count = 0;  ///< points in the core
  double psi = 0.0;             ///< loss fraction of the core
  bool terminal = false;

  friend bool operator==(const SliceSpec&, const SliceSpec&) = default;
};

struct SlicePlan {
  SlicerConfig config;
  std::size_t original_size = 0;
  std::vector<SliceSpec> slices;
};

/// Core range of width `w` taken inward from the `side` face of `box`.
AxisRange candidate_core(const BoundingBox& box, Side side, int w);

/// Core grown `overlap` voxels inward, clamped to `box`.
AxisRange extend_inward(const AxisRange& core, Side side, int overlap, const BoundingBox& box);

struct Candidate {
  std::size_t point_count = 0;
  std::optional<double> psi;  ///< empty when the candidate holds no points
};

Candidate candidate_psi(const PointCloud& cloud, Side side, int w,
                        PlaneRule rule = PlaneRule::BestPlane);

/// Candidates for every side, widths 1..min(theta, extent along the side's
/// axis). Wider cores past the extent select the same points.
struct CandidateTable {
  std::array<std::vector<Candidate>, 6> by_side;  ///< indexed like kSides, then w - 1
};

CandidateTable candidate_table_serial(const PointCloud& cloud, const SlicerConfig& config);
CandidateTable candidate_table_parallel(const PointCloud& cloud, const SlicerConfig& config);
CandidateTable candidate_table(const PointCloud& cloud, const SlicerConfig& config, Exec exec);

struct WidthChoice {
  int width = 0;
  std::size_t point_count = 0;
  double psi = 0.0;
};

/// Least-psi width among those holding at least threshold_frac * original_size
/// points; ties prefer the wider core. Empty when the side is exhausted.
std::optional<WidthChoice> best_width(const PointCloud& cloud, Side side,
                                      const SlicerConfig& config, std::size_t original_size);
std::optional<WidthChoice> best_width(std::span<const Candidate> candidates,
                                      const SlicerConfig& config, std::size_t original_size);

/// Best slice over all six sides, or empty when every side is exhausted.
std::optional<SliceSpec> select_slice(const PointCloud& cloud, const SlicerConfig& config,
                                      std::size_t original_size, Exec exec = Exec::Parallel);

SlicePlan build_plan(const PointCloud& cloud, const SlicerConfig& config,
                     Exec exec = Exec::Parallel);

struct ExtractedSlice {
  SliceSpec spec;
  PointCloud cloud;  ///< core plus overlap points
};

/// Replays the plan over `cloud`. Throws SlicerError on a plan/cloud mismatch.
std::vector<ExtractedSlice> extract_slices(const PointCloud& cloud, const SlicePlan& plan);

std::string plan_to_json(const SlicePlan& plan);
SlicePlan plan_from_json(std::string_view text);

}  // namespace swseg
