// Acceptance suite: one PASS/FAIL line per criterion. argv[1] is the swseg
// executable used by the end-to-end check.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "swseg/bitstream.hpp"
#include "swseg/codec.hpp"
#include "swseg/metrics.hpp"
#include "swseg/ply.hpp"
#include "swseg/synthetic.hpp"

using namespace swseg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Point> to_vec(const PointCloud& c) { return {c.points().begin(), c.points().end()}; }

SlicerConfig cfg(int m) {
  SlicerConfig c;
  c.overlap = m;
  return c;
}

PointCloud folded(std::uint64_t seed) {
  return gen_synthetic(SynthKind::FoldedSheet, {{"extent", 32}, {"amplitude", 8}, {"period", 16}}, seed);
}

std::vector<PointCloud> synthetic_set() {
  return {gen_synthetic(SynthKind::Plane, {{"extent", 16}, {"level", 5}}, 0),
          gen_synthetic(SynthKind::Cube, {{"extent", 2}}, 0),
          gen_synthetic(SynthKind::Cube, {{"extent", 9}}, 0),
          gen_synthetic(SynthKind::SphereShell, {{"radius", 10}}, 0),
          folded(1),
          folded(4),
          gen_synthetic(SynthKind::UniformRandom, {{"extent", 40}, {"count", 900}}, 3)};
}

std::vector<PointCloud> random_set(std::uint32_t seed, int n) {
  std::mt19937 rng(seed);
  std::vector<PointCloud> out;
  for (int i = 0; i < n; ++i) out.push_back(oracle::random_cloud(rng));
  return out;
}

std::string str(const std::vector<std::uint8_t>& b) { return {b.begin(), b.end()}; }

Outcome c1_psi_oracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int n = 0;
  for (const auto& c : random_set(1001, 60)) {
    ++n;
    const auto lost = compute_psi(c).lost();
    const auto ref = oracle::capture_lost(to_vec(c));
    if (lost != ref) {
      o.pass = false;
      o.detail = "cloud " + std::to_string(n) + ": " + std::to_string(lost) + " vs " + std::to_string(ref);
      return o;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = secs < 10.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d clouds, exact match, %.2f s", n, secs);
  o.detail = buf;
  return o;
}

Outcome c2_lossless() {
  Outcome o;
  auto clouds = synthetic_set();
  for (auto& c : random_set(2002, 24)) clouds.push_back(std::move(c));
  int runs = 0;
  for (const auto& c : clouds)
    for (int m : {0, 1, 2}) {
      const auto bytes = encode(c, build_plan(c, cfg(m)));
      const auto d = decode(bytes);
      ++runs;
      if (!same_point_set(d.cloud, c)) return {false, "point set differs, run " + std::to_string(runs)};
      if (encode_records(d.header, d.records) != bytes)
        return {false, "re-encode differs, run " + std::to_string(runs)};
    }
  o.detail = std::to_string(clouds.size()) + " clouds x 3 overlaps";
  return o;
}

Outcome c3_bits() {
  // A 64-deep slab of 1000 points with B = 10 and no overlap.
  std::vector<Point> v;
  for (int i = 0; i < 1000; ++i)
    v.push_back({static_cast<std::uint16_t>(i % 32), static_cast<std::uint16_t>((i / 32) % 32),
                 static_cast<std::uint16_t>(100 + (i * 7) % 64)});
  const auto cloud = PointCloud::build(v, {}, 10);
  SliceRecord rec;
  rec.side = Side{Axis::Z, Sign::Negative};
  rec.base = 100;
  rec.ext_width = 64;
  rec.points = to_vec(cloud);
  const std::vector<SliceRecord> recs{rec};
  StreamHeader h;
  h.bit_depth = 10;
  h.theta = 64;
  h.overlap = 0;
  const auto bytes = encode_records(h, recs);
  const auto sb = slice_bits(1000, 64, 10, false);
  const std::size_t expect_bits = kContainerHeaderBits + record_header_bits(10) + 26000;
  const std::size_t expect_bytes = (expect_bits + 7) / 8;

  if (offset_bits_for(64) != 6 || sb.offset_bits != 6) return {false, "offset width is not 6"};
  if (sb.payload_bits != 26000) return {false, "payload " + std::to_string(sb.payload_bits)};
  if (bytes.size() != expect_bytes) return {false, "stream size " + std::to_string(bytes.size())};

  // Every full-width slice of real plans stores 6-bit offsets, and the budget matches the stream.
  SlicerConfig c0 = cfg(0);
  for (const auto& c : synthetic_set()) {
    if (c.bit_depth() != 10) continue;
    const auto plan = build_plan(c, c0);
    const auto stream = encode(c, plan);
    const auto d = decode(stream);
    for (std::size_t i = 0; i < plan.slices.size(); ++i)
      if (plan.slices[i].extended.width() == 64 && d.records[i].offset_bits() != 6)
        return {false, "full-width slice without 6-bit offsets"};
    if (bit_budget(c, plan).total_bits() != stream.size() * 8) return {false, "bit budget mismatch"};
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "d=6, payload 26000 vs naive %zu bits, budget exact", std::size_t{30 * 1000});
  return {true, buf};
}

Outcome c4_delta() {
  SliceRecord rec;
  rec.side = Side{Axis::Z, Sign::Negative};
  rec.base = 220;
  rec.ext_width = 64;
  rec.points = {{1, 2, 228}};
  const auto bytes = encode_records(StreamHeader{}, std::vector<SliceRecord>{rec});
  BitReader r(bytes);
  std::uint64_t v = 0;
  r.get(kContainerHeaderBits + 4 + 10 + 16 + 4 + 32 + 1, v);
  r.get(6, v);
  const auto d = decode(bytes);
  const bool ok = v == 8 && d.cloud.size() == 1 && d.cloud[0].z == 228;
  return {ok, "stored offset " + std::to_string(v) + ", decoded z " +
                  std::to_string(d.cloud.empty() ? 0 : d.cloud[0].z)};
}

Outcome c5_improvement() {
  const CaptureConfig single{LayerMode::Single, 1};
  std::ostringstream detail;
  bool ok = true;
  double min_gap = 1.0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto c = folded(seed);
    const double base = baseline_loss(c, single).loss_fraction;
    const double plan = plan_loss(c, build_plan(c, cfg(0))).loss_fraction;
    min_gap = std::min(min_gap, base - plan);
    if (!(plan < base)) ok = false;
  }
  const auto cube = gen_synthetic(SynthKind::Cube, {{"extent", 2}}, 0);
  const double cb = baseline_loss(cube, single).loss_fraction;
  const double cp = plan_loss(cube, build_plan(cube, cfg(0))).loss_fraction;
  if (cp > cb) ok = false;
  char buf[128];
  std::snprintf(buf, sizeof buf, "folded-sheet min gap %.2f pp over 6 seeds; cube %.3f vs %.3f",
                100.0 * min_gap, cp, cb);
  return {ok && min_gap >= 0.01, buf};
}

/// Replays the plan, re-checking each chosen width against every alternative
/// on the chosen side. Returns false with a message on the first violation.
bool width_optimal(const PointCloud& cloud, const SlicePlan& plan, std::string& why) {
  PointCloud work = cloud;
  for (const auto& s : plan.slices) {
    if (s.terminal) break;
    const auto box = work.bbox();
    const auto chosen = extract_range(work, s.core);
    const auto chosen_lost = compute_psi(chosen, plan.config.plane_rule, s.side.axis).lost();
    for (int w = 1; w <= plan.config.theta; ++w) {
      const auto cand = extract_range(work, candidate_core(box, s.side, w));
      if (cand.size() < kMinSlicePoints ||
          static_cast<double>(cand.size()) < plan.config.threshold_frac * plan.original_size)
        continue;
      const auto lost = compute_psi(cand, plan.config.plane_rule, s.side.axis).lost();
      // lost/size < chosen_lost/chosen_size, compared without rounding
      if (lost * chosen.size() < chosen_lost * cand.size()) {
        why = "slice " + std::to_string(s.index) + " beaten at w=" + std::to_string(w);
        return false;
      }
    }
    work = remove_range(work, s.core);
  }
  return true;
}

Outcome c6_width_search() {
  auto clouds = random_set(6006, 20);
  for (auto& c : synthetic_set()) clouds.push_back(std::move(c));
  std::size_t slices = 0;
  for (const auto& c : clouds)
    for (int m : {0, 2}) {
      const auto plan = build_plan(c, cfg(m));
      slices += plan.slices.size();
      std::string why;
      if (!width_optimal(c, plan, why)) return {false, why};
    }
  return {true, std::to_string(slices) + " slices re-enumerated"};
}

Outcome c7_coverage() {
  auto clouds = synthetic_set();
  for (auto& c : random_set(7007, 12)) clouds.push_back(std::move(c));
  std::size_t cases = 0;
  for (const auto& c : clouds)
    for (int m : {0, 1, 2}) {
      ++cases;
      const auto config = cfg(m);
      const auto plan = build_plan(c, config);
      PointCloud work = c;
      std::size_t covered = 0;
      for (const auto& s : plan.slices) {
        const auto core = extract_range(work, s.core);
        if (core.size() != s.point_count) return {false, "core count mismatch"};
        covered += core.size();
        work = remove_range(work, s.core);
      }
      if (covered != c.size() || !work.empty()) return {false, "cores do not partition the cloud"};

      std::vector<Point> all;
      for (const auto& e : extract_slices(c, plan))
        all.insert(all.end(), e.cloud.points().begin(), e.cloud.points().end());
      if (!same_point_set(PointCloud::build(all, {}, c.bit_depth()), c))
        return {false, "extracted slices miss points"};

      CompareConfig cc;
      cc.slicer = config;
      const auto again = build_plan(c, config);
      const auto serial = build_plan(c, config, Exec::Serial);
      if (plan_to_json(plan) != plan_to_json(again) || plan_to_json(plan) != plan_to_json(serial) ||
          encode(c, plan) != encode(c, again) ||
          report_csv(compare(c, cc)) != report_csv(compare(c, cc, Exec::Serial)))
        return {false, "outputs differ between runs"};
    }
  return {true, std::to_string(cases) + " (cloud, overlap) cases"};
}

Outcome c8_layers() {
  auto clouds = synthetic_set();
  for (auto& c : random_set(8008, 50)) clouds.push_back(std::move(c));
  const CaptureConfig single{LayerMode::Single, 1};
  const CaptureConfig dual{LayerMode::Dual, 4};
  std::size_t ties = 0;
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    const auto s = baseline_loss(clouds[i], single).lost;
    const auto d = baseline_loss(clouds[i], dual).lost;
    if (d > s) return {false, "dual loses more on cloud " + std::to_string(i)};
    if (d == s && s > 0)
      return {false, "dual equals single with nonzero loss on cloud " + std::to_string(i)};
    if (d == s) ++ties;
  }
  return {true, std::to_string(clouds.size()) + " clouds, " + std::to_string(ties) + " lossless ties"};
}

Outcome c9_cli(const std::string& exe) {
  if (exe.empty()) return {false, "no swseg executable given"};
  const auto dir = fs::temp_directory_path() / "swseg_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto p = [&](const char* name) { return (dir / name).string(); };
  const std::vector<std::string> steps = {
      "gen --kind folded-sheet --extent 64 --amplitude 8 --period 16 --seed 5 --out " + p("in.ply"),
      "slice --input " + p("in.ply") + " --plan " + p("plan.json") + " --emit-slices " + p("slices"),
      "encode --input " + p("in.ply") + " --out " + p("g.swsg"),
      "decode --input " + p("g.swsg") + " --out " + p("out.ply"),
      "compare --input " + p("in.ply") + " --out " + p("report.csv") + " --json " + p("report.json"),
  };
  const auto start = std::chrono::steady_clock::now();
  for (const auto& step : steps) {
    const std::string cmd = "\"" + exe + "\" " + step + " > " + p("log.txt") + " 2>&1";
    if (std::system(cmd.c_str()) != 0) return {false, "step failed: " + step.substr(0, step.find(' '))};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto in = read_ply_file(p("in.ply")).cloud;
  const auto out = read_ply_file(p("out.ply")).cloud;
  if (!same_point_set(in, out)) return {false, "decoded PLY differs from generated PLY"};
  if (secs >= 30.0) return {false, "took " + std::to_string(secs) + " s"};
  char buf[96];
  std::snprintf(buf, sizeof buf, "5 steps exit 0, %zu points round-trip, %.2f s", in.size(), secs);
  return {true, buf};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"psi matches brute-force capture", c1_psi_oracle},
      {"codec is lossless and canonical", c2_lossless},
      {"offset bit reduction", c3_bits},
      {"base/offset worked example", c4_delta},
      {"slice plan beats single layer", c5_improvement},
      {"width search optimality", c6_width_search},
      {"coverage and determinism", c7_coverage},
      {"dual layer never worse", c8_layers},
      {"end-to-end command line", [&] { return c9_cli(exe); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s  %s (%s) [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
