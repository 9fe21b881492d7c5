#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "swseg/cloud.hpp"

namespace swseg {

enum class SynthKind { Plane, Cube, SphereShell, FoldedSheet, UniformRandom };

/// Throws CloudError on an unknown name.
SynthKind parse_synth_kind(const std::string& name);
const char* synth_kind_name(SynthKind kind);

/// True for kinds whose output depends on the seed.
bool synth_kind_is_seeded(SynthKind kind);

/// Keyed numeric parameters:
///   plane          extent, level (z of the plane, default 0)
///   cube           extent (solid cube {0..extent-1}^3)
///   sphere-shell   radius
///   folded-sheet   extent, amplitude, period
///   uniform-random extent, count
/// Every kind accepts `offset`, added to all coordinates (default 0).
using SynthParams = std::map<std::string, double>;

/// Deterministic in (kind, params, seed). Throws CloudError for missing or
/// non-positive parameters.
PointCloud gen_synthetic(SynthKind kind, const SynthParams& params, std::uint64_t seed);

}  // namespace swseg
