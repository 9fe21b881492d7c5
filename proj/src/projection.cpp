#include "swseg/projection.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace swseg {
namespace {

struct KeyHash {
  std::size_t operator()(std::uint64_t k) const noexcept {
    k += 0x9e3779b97f4a7c15ull;
    k = (k ^ (k >> 30)) * 0xbf58476d1ce4e5b9ull;
    k = (k ^ (k >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(k ^ (k >> 31));
  }
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// The 13 neighbor offsets that precede (0,0,0) in (dz, dy, dx) order; visiting
// them from every point covers each 26-adjacent pair once.
constexpr std::array<std::array<int, 3>, 13> kHalfNeighborhood = [] {
  std::array<std::array<int, 3>, 13> out{};
  int n = 0;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dz > 0 || (dz == 0 && dy > 0) || (dz == 0 && dy == 0 && dx >= 0)) continue;
        out[n++] = {dx, dy, dz};
      }
  return out;
}();

std::uint32_t pixel_key(const Point& p, Axis axis) {
  const auto [u, v] = plane_coords(p, axis);
  return (std::uint32_t{u} << 16) | v;
}

// Unites 26-adjacent points. `lookup(x, y, z)` returns the index of the point
// at that voxel or UINT32_MAX.
template <class Lookup>
void unite_neighbors(std::span<const Point> points, DisjointSets& sets, Lookup lookup) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    for (const auto& d : kHalfNeighborhood) {
      const int x = p.x + d[0], y = p.y + d[1], z = p.z + d[2];
      const std::uint32_t j = lookup(x, y, z);
      if (j != UINT32_MAX) sets.unite(static_cast<std::uint32_t>(i), j);
    }
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> ComponentLabeling::groups() const {
  std::vector<std::vector<std::size_t>> out(count);
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
  return out;
}

ComponentLabeling label_components(std::span<const Point> points) {
  if (points.empty()) throw ProjectionError("nothing to label");

  std::array<int, 3> lo{0xffff, 0xffff, 0xffff}, hi{0, 0, 0};
  for (const auto& p : points) {
    const int c[3] = {p.x, p.y, p.z};
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], c[a]);
      hi[a] = std::max(hi[a], c[a]);
    }
  }
  // Padded by one voxel per side so neighbor lookups never leave the grid.
  const std::int64_t nx = hi[0] - lo[0] + 3, ny = hi[1] - lo[1] + 3, nz = hi[2] - lo[2] + 3;
  const std::int64_t volume = nx * ny * nz;

  DisjointSets sets(points.size());
  if (volume <= 64 * static_cast<std::int64_t>(points.size()) + (1 << 18)) {
    std::vector<std::uint32_t> grid(static_cast<std::size_t>(volume), UINT32_MAX);
    auto cell = [&](int x, int y, int z) {
      return static_cast<std::size_t>(((z - lo[2] + 1) * ny + (y - lo[1] + 1)) * nx + (x - lo[0] + 1));
    };
    for (std::size_t i = 0; i < points.size(); ++i)
      grid[cell(points[i].x, points[i].y, points[i].z)] = static_cast<std::uint32_t>(i);
    unite_neighbors(points, sets, [&](int x, int y, int z) { return grid[cell(x, y, z)]; });
  } else {
    std::unordered_map<std::uint64_t, std::uint32_t, KeyHash> index;
    index.reserve(points.size() * 2);
    for (std::size_t i = 0; i < points.size(); ++i)
      index.emplace(points[i].key(), static_cast<std::uint32_t>(i));
    unite_neighbors(points, sets, [&](int x, int y, int z) -> std::uint32_t {
      if (x < 0 || y < 0 || z < 0 || x > 0xffff || y > 0xffff || z > 0xffff) return UINT32_MAX;
      const Point q{static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                    static_cast<std::uint16_t>(z)};
      const auto it = index.find(q.key());
      return it == index.end() ? UINT32_MAX : it->second;
    });
  }

  ComponentLabeling out;
  out.labels.resize(points.size());
  std::vector<std::uint32_t> relabel(points.size(), UINT32_MAX);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::uint32_t root = sets.find(static_cast<std::uint32_t>(i));
    if (relabel[root] == UINT32_MAX) relabel[root] = out.count++;
    out.labels[i] = relabel[root];
  }
  return out;
}

ComponentLabeling label_components(const PointCloud& cloud) {
  return label_components(cloud.points());
}

std::size_t projected_area(std::span<const Point> points, Axis axis) {
  std::vector<std::uint32_t> keys;
  keys.reserve(points.size());
  for (const auto& p : points) keys.push_back(pixel_key(p, axis));
  std::sort(keys.begin(), keys.end());
  return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

PlaneChoice best_plane(std::span<const Point> points) {
  PlaneChoice best{Axis::X, 0};
  for (Axis a : kAxes) {
    const std::size_t area = projected_area(points, a);
    if (area > best.area) best = {a, area};
  }
  return best;
}

ProjectionStats compute_psi(std::span<const Point> points, PlaneRule rule, Axis fixed_axis) {
  if (points.empty()) throw ProjectionError("cannot compute psi of an empty slice");
  const ComponentLabeling labeling = label_components(points);

  ProjectionStats stats;
  stats.phi = points.size();
  stats.areas.assign(labeling.count, ComponentArea{});
  for (std::uint32_t l : labeling.labels) ++stats.areas[l].points;

  // Distinct (label, pixel) pairs per axis give every component's area in one sort.
  std::vector<std::uint64_t> keys(points.size());
  std::vector<std::size_t> area(labeling.count);
  for (Axis a : kAxes) {
    if (rule == PlaneRule::FixedPlane && a != fixed_axis) continue;
    for (std::size_t i = 0; i < points.size(); ++i)
      keys[i] = (std::uint64_t{labeling.labels[i]} << 32) | pixel_key(points[i], a);
    std::sort(keys.begin(), keys.end());
    std::fill(area.begin(), area.end(), 0);
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (i == 0 || keys[i] != keys[i - 1]) ++area[keys[i] >> 32];
    for (std::size_t k = 0; k < area.size(); ++k)
      if (area[k] > stats.areas[k].area) stats.areas[k] = {stats.areas[k].points, a, area[k]};
  }
  for (const auto& ca : stats.areas) stats.captured += ca.area;
  stats.psi = static_cast<double>(stats.phi - stats.captured) / static_cast<double>(stats.phi);
  return stats;
}

ProjectionStats compute_psi(const PointCloud& slice, PlaneRule rule, Axis fixed_axis) {
  return compute_psi(slice.points(), rule, fixed_axis);
}

std::vector<Point> simulate_capture(std::span<const Point> points, Axis axis,
                                    const CaptureConfig& config, Sign view) {
  if (config.layers == LayerMode::Dual && config.thickness < 1)
    throw ProjectionError("dual-layer capture needs thickness >= 1");

  // Signed depth so the near layer is always the minimum.
  auto depth = [&](const Point& p) {
    const int c = p[axis];
    return view == Sign::Negative ? c : -c;
  };

  std::unordered_map<std::uint32_t, std::size_t> near;
  near.reserve(points.size() * 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [it, inserted] = near.emplace(pixel_key(points[i], axis), i);
    if (!inserted) {
      assert(depth(points[i]) != depth(points[it->second]));
      if (depth(points[i]) < depth(points[it->second])) it->second = i;
    }
  }

  std::vector<char> keep(points.size(), 0);
  for (const auto& [pixel, i] : near) keep[i] = 1;

  if (config.layers == LayerMode::Dual) {
    std::unordered_map<std::uint32_t, std::size_t> far;
    far.reserve(near.size() * 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::uint32_t px = pixel_key(points[i], axis);
      const int d0 = depth(points[near.at(px)]);
      const int d = depth(points[i]);
      if (d > d0 + config.thickness) continue;
      auto [it, inserted] = far.emplace(px, i);
      if (!inserted && d > depth(points[it->second])) it->second = i;
    }
    for (const auto& [pixel, i] : far) keep[i] = 1;
  }

  std::vector<Point> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (keep[i]) out.push_back(points[i]);
  return out;
}

std::vector<Point> capture_components(std::span<const Point> points, const CaptureConfig& config,
                                      PlaneRule rule, Axis fixed_axis, std::optional<Side> face) {
  if (points.empty()) return {};
  const ComponentLabeling labeling = label_components(points);
  std::vector<char> keep(points.size(), 0);
  std::vector<Point> part;
  for (const auto& group : labeling.groups()) {
    part.clear();
    for (std::size_t i : group) part.push_back(points[i]);
    const Axis axis = rule == PlaneRule::FixedPlane ? fixed_axis : best_plane(part).axis;
    const Sign view = face && face->axis == axis ? face->sign : Sign::Negative;
    const auto captured = simulate_capture(part, axis, config, view);
    // simulate_capture preserves order, so a merge walk recovers indices.
    std::size_t c = 0;
    for (std::size_t k = 0; k < group.size() && c < captured.size(); ++k) {
      if (part[k] == captured[c]) {
        keep[group[k]] = 1;
        ++c;
      }
    }
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (keep[i]) out.push_back(points[i]);
  return out;
}

}  // namespace swseg
