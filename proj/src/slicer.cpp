#include "swseg/slicer.hpp"

#include <algorithm>

#include "json.hpp"

namespace swseg {

void SlicerConfig::validate() const {
  if (theta < 1) throw SlicerError("theta must be >= 1");
  if (!(threshold_frac >= 0.0 && threshold_frac < 1.0))
    throw SlicerError("threshold fraction must lie in [0, 1)");
  if (overlap < 0) throw SlicerError("overlap must be >= 0");
}

AxisRange candidate_core(const BoundingBox& box, Side side, int w) {
  if (side.sign == Sign::Positive) {
    const std::int32_t hi = std::int32_t{box.hi(side.axis)} + 1;
    return {side.axis, hi - w, hi};
  }
  const std::int32_t lo = box.lo(side.axis);
  return {side.axis, lo, lo + w};
}

AxisRange extend_inward(const AxisRange& core, Side side, int overlap, const BoundingBox& box) {
  AxisRange ext = core;
  if (side.sign == Sign::Positive) {
    ext.lo = std::max<std::int32_t>(core.lo - overlap, box.lo(core.axis));
  } else {
    ext.hi = std::min<std::int32_t>(core.hi + overlap, std::int32_t{box.hi(core.axis)} + 1);
  }
  ext.lo = std::min(ext.lo, core.lo);
  ext.hi = std::max(ext.hi, core.hi);
  return ext;
}

Candidate candidate_psi(const PointCloud& cloud, Side side, int w, PlaneRule rule) {
  if (cloud.empty()) return {};
  const AxisRange core = candidate_core(cloud.bbox(), side, w);
  std::vector<Point> pts;
  for (const auto& p : cloud.points())
    if (core.contains(p)) pts.push_back(p);
  if (pts.empty()) return {};
  return {pts.size(), compute_psi(pts, rule, side.axis).psi};
}

CandidateTable candidate_table(const PointCloud& cloud, const SlicerConfig& config, Exec exec) {
  return exec == Exec::Parallel ? candidate_table_parallel(cloud, config)
                                : candidate_table_serial(cloud, config);
}

bool meets_threshold(std::size_t count, const SlicerConfig& config, std::size_t original_size) {
  return count >= kMinSlicePoints &&
         static_cast<double>(count) >= config.threshold_frac * static_cast<double>(original_size);
}

std::optional<WidthChoice> best_width(std::span<const Candidate> candidates,
                                      const SlicerConfig& config, std::size_t original_size) {
  std::optional<WidthChoice> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (!c.psi || !meets_threshold(c.point_count, config, original_size)) continue;
    // Ascending widths: `<=` hands ties to the wider core.
    if (!best || *c.psi <= best->psi) best = WidthChoice{static_cast<int>(i) + 1, c.point_count, *c.psi};
  }
  return best;
}

std::optional<WidthChoice> best_width(const PointCloud& cloud, Side side,
                                      const SlicerConfig& config, std::size_t original_size) {
  if (cloud.empty()) return std::nullopt;
  const int widths = std::min(config.theta, cloud.bbox().extent(side.axis));
  std::vector<Candidate> candidates;
  for (int w = 1; w <= widths; ++w) candidates.push_back(candidate_psi(cloud, side, w, config.plane_rule));
  return best_width(candidates, config, original_size);
}

std::optional<SliceSpec> select_slice(const PointCloud& cloud, const SlicerConfig& config,
                                      std::size_t original_size, Exec exec) {
  if (cloud.empty()) return std::nullopt;
  const CandidateTable table = candidate_table(cloud, config, exec);

  std::optional<SliceSpec> best;
  for (std::size_t s = 0; s < kSides.size(); ++s) {
    const auto choice = best_width(table.by_side[s], config, original_size);
    if (!choice) continue;
    // Strict comparisons keep the earlier side on a full tie.
    const bool better = !best || choice->psi < best->psi ||
                        (choice->psi == best->psi && choice->width > best->core.width());
    if (!better) continue;
    SliceSpec spec;
    spec.side = kSides[s];
    spec.core = candidate_core(cloud.bbox(), spec.side, choice->width);
    spec.extended = extend_inward(spec.core, spec.side, config.overlap, cloud.bbox());
    spec.point_count = choice->point_count;
    spec.psi = choice->psi;
    best = spec;
  }
  return best;
}

namespace {

SliceSpec terminal_segment(const PointCloud& residue, const SlicerConfig& config) {
  const BoundingBox& box = residue.bbox();
  Axis axis = Axis::X;
  for (Axis a : kAxes)
    if (box.extent(a) < box.extent(axis)) axis = a;
  SliceSpec spec;
  spec.side = Side{axis, Sign::Negative};
  spec.core = AxisRange{axis, box.lo(axis), std::int32_t{box.hi(axis)} + 1};
  spec.extended = spec.core;
  spec.point_count = residue.size();
  spec.psi = compute_psi(residue, config.plane_rule, axis).psi;
  spec.terminal = true;
  return spec;
}

}  // namespace

SlicePlan build_plan(const PointCloud& cloud, const SlicerConfig& config, Exec exec) {
  config.validate();
  if (cloud.empty()) throw SlicerError("cannot slice an empty cloud");

  SlicePlan plan;
  plan.config = config;
  plan.original_size = cloud.size();

  PointCloud working = cloud;
  while (!working.empty()) {
    std::optional<SliceSpec> spec;
    if (meets_threshold(working.size(), config, plan.original_size))
      spec = select_slice(working, config, plan.original_size, exec);
    if (!spec) {
      spec = terminal_segment(working, config);
      spec->index = plan.slices.size();
      plan.slices.push_back(*spec);
      break;
    }
    spec->index = plan.slices.size();
    plan.slices.push_back(*spec);
    working = remove_range(working, spec->core);
  }
  return plan;
}

std::vector<ExtractedSlice> extract_slices(const PointCloud& cloud, const SlicePlan& plan) {
  if (plan.original_size != cloud.size())
    throw SlicerError("plan was built for " + std::to_string(plan.original_size) +
                      " points, cloud has " + std::to_string(cloud.size()));

  std::vector<ExtractedSlice> out;
  out.reserve(plan.slices.size());
  PointCloud working = cloud;
  for (const auto& spec : plan.slices) {
    const std::size_t core_count = static_cast<std::size_t>(
        std::count_if(working.points().begin(), working.points().end(),
                      [&](const Point& p) { return spec.core.contains(p); }));
    if (core_count != spec.point_count)
      throw SlicerError("slice " + std::to_string(spec.index) + " expects " +
                        std::to_string(spec.point_count) + " core points, cloud yields " +
                        std::to_string(core_count));
    out.push_back({spec, extract_range(working, spec.extended)});
    working = remove_range(working, spec.core);
  }
  if (!working.empty())
    throw SlicerError(std::to_string(working.size()) + " points left unassigned by the plan");
  return out;
}

std::string plan_to_json(const SlicePlan& plan) {
  nlohmann::ordered_json j;
  j["theta"] = plan.config.theta;
  j["threshold_frac"] = plan.config.threshold_frac;
  j["overlap"] = plan.config.overlap;
  j["original_size"] = plan.original_size;
  auto slices = nlohmann::ordered_json::array();
  for (const auto& s : plan.slices) {
    nlohmann::ordered_json e;
    e["index"] = s.index;
    e["axis"] = axis_name(s.side.axis);
    e["sign"] = s.side.sign == Sign::Positive ? "+" : "-";
    e["core_lo"] = s.core.lo;
    e["core_hi"] = s.core.hi;
    e["ext_lo"] = s.extended.lo;
    e["ext_hi"] = s.extended.hi;
    e["points"] = s.point_count;
    e["psi"] = s.psi;
    e["terminal"] = s.terminal;
    slices.push_back(std::move(e));
  }
  j["slices"] = std::move(slices);
  return j.dump(2) + "\n";
}

SlicePlan plan_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SlicePlan plan;
    plan.config.theta = j.at("theta").get<int>();
    plan.config.threshold_frac = j.at("threshold_frac").get<double>();
    plan.config.overlap = j.at("overlap").get<int>();
    plan.config.validate();
    plan.original_size = j.at("original_size").get<std::size_t>();
    for (const auto& e : j.at("slices")) {
      SliceSpec s;
      s.index = e.at("index").get<std::size_t>();
      const Axis axis = parse_axis(e.at("axis").get<std::string>());
      const auto sign = e.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw SlicerError("bad sign '" + sign + "'");
      s.side = Side{axis, sign == "+" ? Sign::Positive : Sign::Negative};
      s.core = AxisRange{axis, e.at("core_lo").get<std::int32_t>(), e.at("core_hi").get<std::int32_t>()};
      s.extended = AxisRange{axis, e.at("ext_lo").get<std::int32_t>(), e.at("ext_hi").get<std::int32_t>()};
      s.point_count = e.at("points").get<std::size_t>();
      s.psi = e.at("psi").get<double>();
      s.terminal = e.at("terminal").get<bool>();
      if (s.core.lo >= s.core.hi || s.extended.lo > s.core.lo || s.extended.hi < s.core.hi)
        throw SlicerError("slice " + std::to_string(s.index) + " has inconsistent ranges");
      plan.slices.push_back(s);
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw SlicerError(std::string("malformed plan JSON: ") + e.what());
  } catch (const CloudError& e) {
    throw SlicerError(std::string("malformed plan JSON: ") + e.what());
  }
}

}  // namespace swseg
