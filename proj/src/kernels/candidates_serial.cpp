// Reference candidate sweep; the OpenMP kernel must match it cell for cell.
#include "swseg/slicer.hpp"

#include <algorithm>

namespace swseg {

CandidateTable candidate_table_serial(const PointCloud& cloud, const SlicerConfig& config) {
  CandidateTable table;
  if (cloud.empty()) return table;
  const BoundingBox& box = cloud.bbox();
  for (std::size_t s = 0; s < kSides.size(); ++s) {
    const Side side = kSides[s];
    const int widths = std::min(config.theta, box.extent(side.axis));
    table.by_side[s].reserve(static_cast<std::size_t>(widths));
    for (int w = 1; w <= widths; ++w)
      table.by_side[s].push_back(candidate_psi(cloud, side, w, config.plane_rule));
  }
  return table;
}

}  // namespace swseg
