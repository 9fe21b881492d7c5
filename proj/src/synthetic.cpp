#include "swseg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace swseg {
namespace {

double require(const SynthParams& params, const std::string& key, const char* kind) {
  auto it = params.find(key);
  if (it == params.end())
    throw CloudError(std::string(kind) + " requires parameter '" + key + "'");
  return it->second;
}

int positive_int(const SynthParams& params, const std::string& key, const char* kind) {
  const double v = require(params, key, kind);
  if (!(v >= 1.0)) throw CloudError(std::string(kind) + ": '" + key + "' must be positive");
  return static_cast<int>(v);
}

int optional_int(const SynthParams& params, const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (it->second < 0) throw CloudError("'" + key + "' must be non-negative");
  return static_cast<int>(it->second);
}

void check_grid(int max_coord) {
  if (max_coord >= (1 << kMaxBitDepth))
    throw CloudError("synthetic cloud exceeds the 16-bit grid");
}

std::uint16_t c16(int v) { return static_cast<std::uint16_t>(v); }

}  // namespace

SynthKind parse_synth_kind(const std::string& name) {
  if (name == "plane") return SynthKind::Plane;
  if (name == "cube") return SynthKind::Cube;
  if (name == "sphere-shell") return SynthKind::SphereShell;
  if (name == "folded-sheet") return SynthKind::FoldedSheet;
  if (name == "uniform-random") return SynthKind::UniformRandom;
  throw CloudError("unknown synthetic kind '" + name + "'");
}

const char* synth_kind_name(SynthKind kind) {
  switch (kind) {
    case SynthKind::Plane: return "plane";
    case SynthKind::Cube: return "cube";
    case SynthKind::SphereShell: return "sphere-shell";
    case SynthKind::FoldedSheet: return "folded-sheet";
    default: return "uniform-random";
  }
}

bool synth_kind_is_seeded(SynthKind kind) {
  return kind == SynthKind::FoldedSheet || kind == SynthKind::UniformRandom;
}

PointCloud gen_synthetic(SynthKind kind, const SynthParams& params, std::uint64_t seed) {
  const char* name = synth_kind_name(kind);
  const int off = optional_int(params, "offset", 0);
  std::vector<Point> pts;

  switch (kind) {
    case SynthKind::Plane: {
      const int e = positive_int(params, "extent", name);
      const int level = optional_int(params, "level", 0);
      check_grid(off + std::max(e - 1, level));
      for (int y = 0; y < e; ++y)
        for (int x = 0; x < e; ++x) pts.push_back({c16(off + x), c16(off + y), c16(off + level)});
      break;
    }
    case SynthKind::Cube: {
      const int e = positive_int(params, "extent", name);
      check_grid(off + e - 1);
      for (int z = 0; z < e; ++z)
        for (int y = 0; y < e; ++y)
          for (int x = 0; x < e; ++x) pts.push_back({c16(off + x), c16(off + y), c16(off + z)});
      break;
    }
    case SynthKind::SphereShell: {
      const int r = positive_int(params, "radius", name);
      const int c = r + 1;
      check_grid(off + 2 * c);
      for (int z = 0; z <= 2 * c; ++z)
        for (int y = 0; y <= 2 * c; ++y)
          for (int x = 0; x <= 2 * c; ++x) {
            const double d = std::sqrt(double((x - c) * (x - c) + (y - c) * (y - c) + (z - c) * (z - c)));
            if (std::abs(d - r) <= 0.5) pts.push_back({c16(off + x), c16(off + y), c16(off + z)});
          }
      break;
    }
    case SynthKind::FoldedSheet: {
      // Sheet extruded along y whose x-z profile is a triangle wave with
      // peak-to-peak height 2*amplitude. Slopes steeper than one voxel per
      // column stack several z values over the same (x, y) pixel.
      const int e = positive_int(params, "extent", name);
      const int amp = positive_int(params, "amplitude", name);
      const int period = positive_int(params, "period", name);
      if (period < 2) throw CloudError("folded-sheet: 'period' must be at least 2");
      check_grid(off + std::max(e - 1, 2 * amp));
      std::mt19937_64 rng(seed);
      const int phase = static_cast<int>(rng() % static_cast<std::uint64_t>(period));
      auto height = [&](int x) {
        const double t = static_cast<double>((x + phase) % period) / period;
        const double tri = t < 0.5 ? 2.0 * t : 2.0 * (1.0 - t);
        return static_cast<int>(std::lround(2.0 * amp * tri));
      };
      for (int y = 0; y < e; ++y) {
        for (int x = 0; x < e; ++x) {
          const int h0 = height(x);
          const int h1 = height(x + 1);
          for (int z = std::min(h0, h1); z <= std::max(h0, h1); ++z)
            pts.push_back({c16(off + x), c16(off + y), c16(off + z)});
        }
      }
      break;
    }
    case SynthKind::UniformRandom: {
      const int e = positive_int(params, "extent", name);
      const int count = positive_int(params, "count", name);
      check_grid(off + e - 1);
      // Raw engine output keeps the sequence identical across standard libraries.
      std::mt19937_64 rng(seed);
      const auto ue = static_cast<std::uint64_t>(e);
      pts.reserve(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i) {
        const auto x = static_cast<int>(rng() % ue);
        const auto y = static_cast<int>(rng() % ue);
        const auto z = static_cast<int>(rng() % ue);
        pts.push_back({c16(off + x), c16(off + y), c16(off + z)});
      }
      break;
    }
  }
  return PointCloud::build(std::move(pts));
}

}  // namespace swseg
