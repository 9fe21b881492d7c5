#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "swseg/cloud.hpp"

namespace swseg {

class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 26-connected components. Labels are contiguous from 0 in order of the
/// first point that belongs to each component.
struct ComponentLabeling {
  std::vector<std::uint32_t> labels;
  std::uint32_t count = 0;

  /// Point indices grouped by label, each group in ascending index order.
  std::vector<std::vector<std::size_t>> groups() const;
};

ComponentLabeling label_components(std::span<const Point> points);
ComponentLabeling label_components(const PointCloud& cloud);

/// Distinct (u, v) pixels after dropping `axis`.
std::size_t projected_area(std::span<const Point> points, Axis axis);

struct PlaneChoice {
  Axis axis = Axis::X;
  std::size_t area = 0;
};

/// Axis with the most distinct pixels; ties go X < Y < Z.
PlaneChoice best_plane(std::span<const Point> points);

/// How each component picks its projection plane.
enum class PlaneRule { BestPlane, FixedPlane };

struct ComponentArea {
  std::size_t points = 0;
  Axis axis = Axis::X;
  std::size_t area = 0;
};

/// Loss statistics of single-layer per-component projection.
struct ProjectionStats {
  std::size_t phi = 0;                ///< point count of the slice
  std::vector<ComponentArea> areas;   ///< alpha_k, indexed by component label
  std::size_t captured = 0;           ///< sum of alpha_k
  double psi = 0.0;                   ///< (phi - captured) / phi

  std::size_t lost() const { return phi - captured; }
};

/// Labels components and projects each on its plane (best plane, or
/// `fixed_axis` under PlaneRule::FixedPlane). Throws on empty input.
ProjectionStats compute_psi(std::span<const Point> points, PlaneRule rule = PlaneRule::BestPlane,
                            Axis fixed_axis = Axis::Z);
ProjectionStats compute_psi(const PointCloud& slice, PlaneRule rule = PlaneRule::BestPlane,
                            Axis fixed_axis = Axis::Z);

enum class LayerMode { Single, Dual };

struct CaptureConfig {
  LayerMode layers = LayerMode::Single;
  int thickness = 4;  ///< surface thickness of the far layer, dual mode only
};

/// Points a depth-map projection along `axis` can store. The near layer keeps
/// the minimum depth per pixel; in dual mode the far layer adds the deepest
/// point within [near, near + thickness]. Viewing from Sign::Positive measures
/// depth from the high end of the axis.
std::vector<Point> simulate_capture(std::span<const Point> points, Axis axis,
                                    const CaptureConfig& config, Sign view = Sign::Negative);

/// Union of simulate_capture over the components of `points`, each on its
/// best plane (or `fixed_axis`). A component projected along `face->axis` is
/// viewed from `face->sign`; every other projection views from the low end.
/// Result is in input order.
std::vector<Point> capture_components(std::span<const Point> points, const CaptureConfig& config,
                                      PlaneRule rule = PlaneRule::BestPlane,
                                      Axis fixed_axis = Axis::Z,
                                      std::optional<Side> face = std::nullopt);

}  // namespace swseg
