#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "swseg/cloud.hpp"
#include "swseg/projection.hpp"
#include "swseg/slicer.hpp"

namespace swseg {

struct SliceLoss {
  std::size_t index = 0;
  std::size_t points = 0;    ///< extended slice size
  std::size_t captured = 0;
};

struct LossReport {
  std::string strategy;
  std::size_t total = 0;
  std::size_t captured = 0;
  std::size_t lost = 0;
  double loss_fraction = 0.0;
  std::vector<SliceLoss> per_slice;  ///< empty for baselines
};

/// Single-layer best-plane capture of every extended slice; a point counts as
/// captured if any slice captures it.
LossReport plan_loss(const PointCloud& cloud, const SlicePlan& plan, Exec exec = Exec::Parallel);

/// Whole-cloud capture: components of the full cloud, each on its best plane.
LossReport baseline_loss(const PointCloud& cloud, const CaptureConfig& capture);

enum class Baseline { SingleLayer, DualLayer };

struct CompareConfig {
  SlicerConfig slicer;
  std::vector<Baseline> baselines{Baseline::SingleLayer, Baseline::DualLayer};
  int thickness = 4;
};

struct ReportRow {
  LossReport loss;
  std::size_t slices = 0;
  std::size_t header_bits = 0;
  std::size_t payload_bits = 0;
};

/// Baselines in the requested order followed by the slice plan.
std::vector<ReportRow> compare(const PointCloud& cloud, const CompareConfig& config,
                               Exec exec = Exec::Parallel);

inline constexpr const char* kCsvHeader =
    "strategy,points,captured,lost,loss_fraction,slices,header_bits,payload_bits";

std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);

}  // namespace swseg
