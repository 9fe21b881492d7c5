#include "swseg/cloud.hpp"

#include <algorithm>
#include <unordered_set>

namespace swseg {

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    default: return "Z";
  }
}

Axis parse_axis(const std::string& s) {
  if (s == "X" || s == "x") return Axis::X;
  if (s == "Y" || s == "y") return Axis::Y;
  if (s == "Z" || s == "z") return Axis::Z;
  throw CloudError("unknown axis '" + s + "'");
}

std::string side_name(Side s) {
  return std::string(s.sign == Sign::Positive ? "+" : "-") + axis_name(s.axis);
}

Point from_plane(Axis axis, std::uint16_t depth, std::uint16_t u, std::uint16_t v) {
  switch (axis) {
    case Axis::X: return {depth, u, v};
    case Axis::Y: return {u, depth, v};
    default: return {u, v, depth};
  }
}

int bit_depth_for(std::uint32_t max_coord) {
  int b = kDefaultBitDepth;
  while (b < kMaxBitDepth && max_coord >= (1u << b)) ++b;
  return b;
}

PointCloud PointCloud::build(std::vector<Point> points, std::vector<Rgb> colors,
                             std::optional<int> bit_depth, std::size_t* merged) {
  if (!colors.empty() && colors.size() != points.size())
    throw CloudError("color count does not match point count");

  PointCloud out;
  std::uint32_t max_coord = 0;
  for (const auto& p : points) max_coord = std::max<std::uint32_t>({max_coord, p.x, p.y, p.z});

  if (bit_depth) {
    if (*bit_depth < 1 || *bit_depth > kMaxBitDepth)
      throw CloudError("bit depth " + std::to_string(*bit_depth) + " outside [1, 16]");
    if (!points.empty() && max_coord >= (1u << *bit_depth))
      throw CloudError("coordinate " + std::to_string(max_coord) + " does not fit " +
                       std::to_string(*bit_depth) + "-bit grid");
    out.bit_depth_ = *bit_depth;
  } else {
    out.bit_depth_ = bit_depth_for(max_coord);
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(points.size() * 2);
  out.points_.reserve(points.size());
  std::size_t dup = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!seen.insert(points[i].key()).second) {
      ++dup;
      continue;
    }
    out.points_.push_back(points[i]);
    if (!colors.empty()) out.colors_.push_back(colors[i]);
  }
  if (merged) *merged = dup;
  out.refresh_bbox();
  return out;
}

const BoundingBox& PointCloud::bbox() const {
  if (!bbox_) throw CloudError("empty cloud has no bounding box");
  return *bbox_;
}

std::vector<Point> PointCloud::sorted_points() const {
  std::vector<Point> v(points_.begin(), points_.end());
  std::sort(v.begin(), v.end());
  return v;
}

void PointCloud::refresh_bbox() {
  if (points_.empty()) {
    bbox_.reset();
    return;
  }
  BoundingBox b;
  b.min = {points_[0].x, points_[0].y, points_[0].z};
  b.max = b.min;
  for (const auto& p : points_) {
    const std::array<std::uint16_t, 3> c{p.x, p.y, p.z};
    for (int k = 0; k < 3; ++k) {
      b.min[k] = std::min(b.min[k], c[k]);
      b.max[k] = std::max(b.max[k], c[k]);
    }
  }
  bbox_ = b;
}

PointCloud extract_range(const PointCloud& cloud, const AxisRange& range) {
  return cloud.filter([&](const Point& p) { return range.contains(p); });
}

PointCloud remove_range(const PointCloud& cloud, const AxisRange& range) {
  return cloud.filter([&](const Point& p) { return !range.contains(p); });
}

bool same_point_set(const PointCloud& a, const PointCloud& b) {
  return a.size() == b.size() && a.sorted_points() == b.sorted_points();
}

}  // namespace swseg
