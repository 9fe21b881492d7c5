#include "swseg/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "swseg/codec.hpp"
#include "swseg/projection.hpp"

namespace swseg::cli {
namespace {

struct RawArgs {
  std::string input, output, plan, json, emit, format = "binary", plane_rule = "best",
      baseline = "single,dual", kind;
  int theta = 64, overlap = 2, thickness = 4;
  double threshold = 0.05;
  std::optional<double> extent, amplitude, period, level, radius, count, offset;
  std::optional<std::uint64_t> seed;
};

void add_slicer_flags(CLI::App* sub, RawArgs& a) {
  sub->add_option("--theta", a.theta, "Maximum slice width in voxels")->capture_default_str();
  sub->add_option("--threshold", a.threshold, "Minimum slice size as a fraction of the cloud")
      ->capture_default_str();
  sub->add_option("--overlap", a.overlap, "Inward overlap lines per slice")->capture_default_str();
  sub->add_option("--plane-rule", a.plane_rule, "Component plane rule: best or fixed")
      ->check(CLI::IsMember({"best", "fixed"}))
      ->capture_default_str();
}

void add_format_flag(CLI::App* sub, RawArgs& a) {
  sub->add_option("--format", a.format, "PLY encoding: ascii or binary")
      ->check(CLI::IsMember({"ascii", "binary"}))
      ->capture_default_str();
}

std::vector<Baseline> parse_baselines(const std::string& text) {
  std::vector<Baseline> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "single") {
      out.push_back(Baseline::SingleLayer);
    } else if (item == "dual") {
      out.push_back(Baseline::DualLayer);
    } else {
      throw std::invalid_argument("unknown baseline '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("at least one baseline is required");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

PointCloud load(const std::string& path) {
  PlyLoad l = read_ply_file(path);
  if (l.merged > 0)
    std::fprintf(stderr, "%s: %zu vertices, %zu duplicates merged, %zu points\n", path.c_str(),
                 l.vertices, l.merged, l.cloud.size());
  return std::move(l.cloud);
}

std::string analyze_json(const PointCloud& cloud, const SlicePlan& plan) {
  const ProjectionStats whole = compute_psi(cloud);
  nlohmann::ordered_json j;
  j["points"] = cloud.size();
  j["bit_depth"] = cloud.bit_depth();
  j["components"] = whole.areas.size();
  j["psi"] = whole.psi;
  auto axes = nlohmann::ordered_json::array();
  for (Axis a : kAxes) {
    const std::size_t area = projected_area(cloud.points(), a);
    nlohmann::ordered_json e;
    e["axis"] = axis_name(a);
    e["projected_area"] = area;
    e["occluded"] = cloud.size() - area;
    axes.push_back(std::move(e));
  }
  j["axes"] = std::move(axes);
  auto slices = nlohmann::ordered_json::array();
  for (const auto& s : plan.slices) {
    nlohmann::ordered_json e;
    e["index"] = s.index;
    e["axis"] = axis_name(s.side.axis);
    e["sign"] = s.side.sign == Sign::Positive ? "+" : "-";
    e["points"] = s.point_count;
    e["psi"] = s.psi;
    e["terminal"] = s.terminal;
    slices.push_back(std::move(e));
  }
  j["slices"] = std::move(slices);
  return j.dump(2) + "\n";
}

}  // namespace

Invocation parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Slice-wise segmentation of voxelized point clouds", "swseg"};
  app.require_subcommand(1);
  RawArgs a;

  auto* gen = app.add_subcommand("gen", "Write a synthetic point cloud");
  gen->add_option("--kind", a.kind, "plane, cube, sphere-shell, folded-sheet, uniform-random")->required();
  gen->add_option("--out", a.output, "Output PLY")->required();
  gen->add_option("--extent", a.extent, "Extent in voxels");
  gen->add_option("--amplitude", a.amplitude, "Fold amplitude (folded-sheet)");
  gen->add_option("--period", a.period, "Fold period (folded-sheet)");
  gen->add_option("--level", a.level, "Plane height (plane)");
  gen->add_option("--radius", a.radius, "Shell radius (sphere-shell)");
  gen->add_option("--count", a.count, "Point count (uniform-random)");
  gen->add_option("--offset", a.offset, "Translation added to every coordinate");
  gen->add_option("--seed", a.seed, "RNG seed, required for seeded kinds");
  add_format_flag(gen, a);

  auto* analyze = app.add_subcommand("analyze", "Per-axis occlusion and per-slice psi as JSON");
  analyze->add_option("--input", a.input, "Input PLY")->required();
  analyze->add_option("--out", a.output, "Output JSON")->required();
  add_slicer_flags(analyze, a);

  auto* slice = app.add_subcommand("slice", "Build a slice plan");
  slice->add_option("--input", a.input, "Input PLY")->required();
  slice->add_option("--plan", a.plan, "Output plan JSON")->required();
  slice->add_option("--emit-slices", a.emit, "Directory for one PLY per slice");
  add_slicer_flags(slice, a);
  add_format_flag(slice, a);

  auto* encode = app.add_subcommand("encode", "Encode a cloud as an SWSG stream");
  encode->add_option("--input", a.input, "Input PLY")->required();
  encode->add_option("--out", a.output, "Output SWSG stream")->required();
  encode->add_option("--plan", a.plan, "Also write the plan JSON here");
  add_slicer_flags(encode, a);

  auto* decode = app.add_subcommand("decode", "Decode an SWSG stream to PLY");
  decode->add_option("--input", a.input, "Input SWSG stream")->required();
  decode->add_option("--out", a.output, "Output PLY")->required();
  add_format_flag(decode, a);

  auto* cmp = app.add_subcommand("compare", "Data-loss report: baselines vs slice plan");
  cmp->add_option("--input", a.input, "Input PLY")->required();
  cmp->add_option("--out", a.output, "Output CSV")->required();
  cmp->add_option("--json", a.json, "Also write a JSON report here");
  cmp->add_option("--baseline", a.baseline, "Comma list of single,dual")->capture_default_str();
  cmp->add_option("--thickness", a.thickness, "Dual-layer surface thickness")->capture_default_str();
  add_slicer_flags(cmp, a);

  std::vector<const char*> argv{"swseg"};
  for (const auto& s : args) argv.push_back(s.c_str());

  Invocation inv;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    inv.help = true;
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    inv.help_text = sub->help();
    return inv;
  } catch (const CLI::ParseError& e) {
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    throw UsageError(e.what(), sub->help());
  }

  CLI::App* used = app.get_subcommands().front();
  const std::string name = used->get_name();
  auto usage_fail = [&](const std::string& msg) -> UsageError { return UsageError(msg, used->help()); };

  if (name == "gen") inv.command = Command::Gen;
  if (name == "analyze") inv.command = Command::Analyze;
  if (name == "slice") inv.command = Command::Slice;
  if (name == "encode") inv.command = Command::Encode;
  if (name == "decode") inv.command = Command::Decode;
  if (name == "compare") inv.command = Command::Compare;

  inv.input = a.input;
  inv.output = a.output;
  inv.plan_path = a.plan;
  inv.json_path = a.json;
  inv.emit_dir = a.emit;
  inv.format = a.format == "ascii" ? PlyFormat::Ascii : PlyFormat::BinaryLittleEndian;
  inv.slicer.theta = a.theta;
  inv.slicer.threshold_frac = a.threshold;
  inv.slicer.overlap = a.overlap;
  inv.slicer.plane_rule = a.plane_rule == "fixed" ? PlaneRule::FixedPlane : PlaneRule::BestPlane;
  inv.thickness = a.thickness;
  inv.seed = a.seed;

  try {
    inv.slicer.validate();
    if (inv.thickness < 1) throw std::invalid_argument("thickness must be >= 1");
    if (inv.command == Command::Compare) inv.baselines = parse_baselines(a.baseline);
    if (inv.command == Command::Gen) {
      inv.kind = parse_synth_kind(a.kind);
      if (synth_kind_is_seeded(inv.kind) && !inv.seed)
        throw std::invalid_argument(std::string("--seed is required for ") + synth_kind_name(inv.kind));
      const std::pair<const char*, const std::optional<double>*> named[] = {
          {"extent", &a.extent}, {"amplitude", &a.amplitude}, {"period", &a.period},
          {"level", &a.level},   {"radius", &a.radius},       {"count", &a.count},
          {"offset", &a.offset}};
      for (const auto& [key, value] : named)
        if (value->has_value()) inv.params[key] = **value;
    }
  } catch (const std::exception& e) {
    throw usage_fail(e.what());
  }
  return inv;
}

int run(const Invocation& inv) {
  try {
    switch (inv.command) {
      case Command::Gen: {
        const PointCloud cloud = gen_synthetic(inv.kind, inv.params, inv.seed.value_or(0));
        write_ply_file(inv.output, cloud, inv.format);
        break;
      }
      case Command::Analyze: {
        const PointCloud cloud = load(inv.input);
        const SlicePlan plan = build_plan(cloud, inv.slicer);
        write_text(inv.output, analyze_json(cloud, plan));
        break;
      }
      case Command::Slice: {
        const PointCloud cloud = load(inv.input);
        const SlicePlan plan = build_plan(cloud, inv.slicer);
        write_text(inv.plan_path, plan_to_json(plan));
        if (!inv.emit_dir.empty()) {
          std::filesystem::create_directories(inv.emit_dir);
          for (const auto& s : extract_slices(cloud, plan)) {
            char name[32];
            std::snprintf(name, sizeof name, "slice_%03zu.ply", s.spec.index);
            write_ply_file((std::filesystem::path(inv.emit_dir) / name).string(), s.cloud, inv.format);
          }
        }
        break;
      }
      case Command::Encode: {
        const PointCloud cloud = load(inv.input);
        const SlicePlan plan = build_plan(cloud, inv.slicer);
        write_file_bytes(inv.output, encode(cloud, plan));
        if (!inv.plan_path.empty()) write_text(inv.plan_path, plan_to_json(plan));
        break;
      }
      case Command::Decode: {
        const DecodedStream d = decode(read_file_bytes(inv.input));
        write_ply_file(inv.output, d.cloud, inv.format);
        break;
      }
      case Command::Compare: {
        const PointCloud cloud = load(inv.input);
        CompareConfig cfg;
        cfg.slicer = inv.slicer;
        cfg.baselines = inv.baselines;
        cfg.thickness = inv.thickness;
        const auto rows = compare(cloud, cfg);
        write_text(inv.output, report_csv(rows));
        if (!inv.json_path.empty()) write_text(inv.json_path, report_json(rows));
        break;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "swseg: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int main_entry(const std::vector<std::string>& args) {
  Invocation inv;
  try {
    inv = parse_args(args);
  } catch (const UsageError& e) {
    std::cerr << "swseg: " << e.what() << "\n\n" << e.usage();
    return 2;
  }
  if (inv.help) {
    std::cout << inv.help_text;
    return 0;
  }
  return run(inv);
}

}  // namespace swseg::cli
