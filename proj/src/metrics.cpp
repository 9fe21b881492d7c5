#include "swseg/metrics.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "swseg/codec.hpp"

namespace swseg {
namespace {

LossReport make_report(std::string strategy, std::size_t total, std::size_t captured) {
  LossReport r;
  r.strategy = std::move(strategy);
  r.total = total;
  r.captured = captured;
  r.lost = total - captured;
  r.loss_fraction = total == 0 ? 0.0 : static_cast<double>(r.lost) / static_cast<double>(total);
  return r;
}

const char* baseline_name(Baseline b) {
  return b == Baseline::SingleLayer ? "single-layer" : "dual-layer";
}

}  // namespace

LossReport plan_loss(const PointCloud& cloud, const SlicePlan& plan, Exec exec) {
  const auto slices = extract_slices(cloud, plan);
  const CaptureConfig single{LayerMode::Single, 1};
  const PlaneRule rule = plan.config.plane_rule;

  std::vector<std::vector<Point>> captured(slices.size());
  const auto n = static_cast<std::int64_t>(slices.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& s = slices[static_cast<std::size_t>(i)];
    captured[static_cast<std::size_t>(i)] =
        capture_components(s.cloud.points(), single, rule, s.spec.side.axis, s.spec.side);
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(cloud.size() * 2);
  std::vector<SliceLoss> per_slice;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    for (const auto& p : captured[i]) seen.insert(p.key());
    per_slice.push_back({slices[i].spec.index, slices[i].cloud.size(), captured[i].size()});
  }
  LossReport r = make_report("slice-plan", cloud.size(), seen.size());
  r.per_slice = std::move(per_slice);
  return r;
}

LossReport baseline_loss(const PointCloud& cloud, const CaptureConfig& capture) {
  const auto captured = capture_components(cloud.points(), capture);
  return make_report(capture.layers == LayerMode::Single ? "single-layer" : "dual-layer",
                     cloud.size(), captured.size());
}

std::vector<ReportRow> compare(const PointCloud& cloud, const CompareConfig& config, Exec exec) {
  if (config.baselines.empty()) throw std::invalid_argument("compare needs at least one baseline");

  std::vector<ReportRow> rows;
  for (Baseline b : config.baselines) {
    const CaptureConfig capture{b == Baseline::SingleLayer ? LayerMode::Single : LayerMode::Dual,
                                config.thickness};
    ReportRow row;
    row.loss = baseline_loss(cloud, capture);
    row.loss.strategy = baseline_name(b);
    rows.push_back(std::move(row));
  }

  const SlicePlan plan = build_plan(cloud, config.slicer, exec);
  const BitBudget budget = bit_budget(cloud, plan);
  ReportRow row;
  row.loss = plan_loss(cloud, plan, exec);
  row.slices = plan.slices.size();
  row.header_bits = budget.container_bits + budget.header_bits;
  row.payload_bits = budget.payload_bits;
  rows.push_back(std::move(row));
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& row : rows) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.6f", row.loss.loss_fraction);
    out += row.loss.strategy + ',' + std::to_string(row.loss.total) + ',' +
           std::to_string(row.loss.captured) + ',' + std::to_string(row.loss.lost) + ',' + frac +
           ',' + std::to_string(row.slices) + ',' + std::to_string(row.header_bits) + ',' +
           std::to_string(row.payload_bits) + "\n";
  }
  return out;
}

std::string report_json(const std::vector<ReportRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    j["strategy"] = row.loss.strategy;
    j["points"] = row.loss.total;
    j["captured"] = row.loss.captured;
    j["lost"] = row.loss.lost;
    j["loss_fraction"] = row.loss.loss_fraction;
    j["slices"] = row.slices;
    j["header_bits"] = row.header_bits;
    j["payload_bits"] = row.payload_bits;
    if (!row.loss.per_slice.empty()) {
      auto per = nlohmann::ordered_json::array();
      for (const auto& s : row.loss.per_slice)
        per.push_back({{"index", s.index}, {"points", s.points}, {"captured", s.captured}});
      j["per_slice"] = std::move(per);
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace swseg
