#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swseg {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };
enum class Sign : std::uint8_t { Negative = 0, Positive = 1 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

const char* axis_name(Axis a);
Axis parse_axis(const std::string& s);

/// One face of the bounding box. Exactly six exist.
struct Side {
  Axis axis = Axis::X;
  Sign sign = Sign::Negative;

  friend bool operator==(const Side&, const Side&) = default;
};

/// Fixed evaluation order used for tie-breaking: +X, -X, +Y, -Y, +Z, -Z.
inline constexpr std::array<Side, 6> kSides{
    Side{Axis::X, Sign::Positive}, Side{Axis::X, Sign::Negative},
    Side{Axis::Y, Sign::Positive}, Side{Axis::Y, Sign::Negative},
    Side{Axis::Z, Sign::Positive}, Side{Axis::Z, Sign::Negative}};

std::string side_name(Side s);

/// Voxel coordinate triple. Coordinates never exceed 16 bits.
struct Point {
  std::uint16_t x = 0, y = 0, z = 0;

  std::uint16_t operator[](Axis a) const {
    return a == Axis::X ? x : (a == Axis::Y ? y : z);
  }
  std::uint64_t key() const {
    return std::uint64_t{x} | (std::uint64_t{y} << 16) | (std::uint64_t{z} << 32);
  }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// In-plane pixel coordinates after dropping `axis`: (y,z) for X, (x,z) for Y, (x,y) for Z.
inline std::pair<std::uint16_t, std::uint16_t> plane_coords(const Point& p, Axis axis) {
  switch (axis) {
    case Axis::X: return {p.y, p.z};
    case Axis::Y: return {p.x, p.z};
    default: return {p.x, p.y};
  }
}

/// Inverse of plane_coords.
Point from_plane(Axis axis, std::uint16_t depth, std::uint16_t u, std::uint16_t v);

/// Half-open interval [lo, hi) along one axis.
struct AxisRange {
  Axis axis = Axis::X;
  std::int32_t lo = 0;
  std::int32_t hi = 1;

  std::int32_t width() const { return hi - lo; }
  bool contains(const Point& p) const {
    const std::int32_t c = p[axis];
    return c >= lo && c < hi;
  }
  friend bool operator==(const AxisRange&, const AxisRange&) = default;
};

/// Inclusive min/max per axis.
struct BoundingBox {
  std::array<std::uint16_t, 3> min{};
  std::array<std::uint16_t, 3> max{};

  std::uint16_t lo(Axis a) const { return min[static_cast<int>(a)]; }
  std::uint16_t hi(Axis a) const { return max[static_cast<int>(a)]; }
  std::int32_t extent(Axis a) const { return std::int32_t{hi(a)} - lo(a) + 1; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

class CloudError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultBitDepth = 10;
inline constexpr int kMaxBitDepth = 16;

/// Smallest bit depth in [10, 16] whose grid holds `max_coord`.
int bit_depth_for(std::uint32_t max_coord);

/// Immutable set of distinct voxels with optional per-point color.
///
/// Points keep their first-occurrence order; duplicate coordinates are merged
/// at construction with the first color retained.
class PointCloud {
 public:
  PointCloud() = default;

  /// Builds a cloud, merging duplicates. `colors` is empty or parallel to
  /// `points`. When `bit_depth` is absent it is derived from the data.
  /// Throws CloudError if a coordinate does not fit the bit depth.
  static PointCloud build(std::vector<Point> points, std::vector<Rgb> colors = {},
                          std::optional<int> bit_depth = std::nullopt,
                          std::size_t* merged = nullptr);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  int bit_depth() const { return bit_depth_; }
  bool has_colors() const { return !colors_.empty(); }

  std::span<const Point> points() const { return points_; }
  std::span<const Rgb> colors() const { return colors_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  /// Throws CloudError on an empty cloud.
  const BoundingBox& bbox() const;

  /// Points sorted lexicographically; handy for set comparison.
  std::vector<Point> sorted_points() const;

  /// Sub-cloud of the points satisfying `keep`, order preserved.
  template <class Pred>
  PointCloud filter(Pred keep) const {
    PointCloud out;
    out.bit_depth_ = bit_depth_;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (keep(points_[i])) {
        out.points_.push_back(points_[i]);
        if (!colors_.empty()) out.colors_.push_back(colors_[i]);
      }
    }
    out.refresh_bbox();
    return out;
  }

 private:
  void refresh_bbox();

  std::vector<Point> points_;
  std::vector<Rgb> colors_;
  int bit_depth_ = kDefaultBitDepth;
  std::optional<BoundingBox> bbox_;
};

/// Points whose range.axis coordinate lies in [lo, hi).
PointCloud extract_range(const PointCloud& cloud, const AxisRange& range);

/// Complement of extract_range.
PointCloud remove_range(const PointCloud& cloud, const AxisRange& range);

/// Set equality on coordinates, ignoring order and color.
bool same_point_set(const PointCloud& a, const PointCloud& b);

}  // namespace swseg
