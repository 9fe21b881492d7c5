#include "swseg/slicer.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace swseg {

CandidateTable candidate_table_parallel(const PointCloud& cloud, const SlicerConfig& config) {
  CandidateTable table;
  if (cloud.empty()) return table;
  const BoundingBox& box = cloud.bbox();

  // Flatten (side, width) so the scheduler can balance wide and narrow cores.
  std::vector<std::pair<int, int>> jobs;
  for (int s = 0; s < static_cast<int>(kSides.size()); ++s) {
    const int widths = std::min(config.theta, box.extent(kSides[s].axis));
    table.by_side[s].resize(static_cast<std::size_t>(widths));
    for (int w = 1; w <= widths; ++w) jobs.emplace_back(s, w);
  }

  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t j = 0; j < n; ++j) {
    const auto [s, w] = jobs[static_cast<std::size_t>(j)];
    table.by_side[s][static_cast<std::size_t>(w - 1)] =
        candidate_psi(cloud, kSides[s], w, config.plane_rule);
  }
  return table;
}

}  // namespace swseg
