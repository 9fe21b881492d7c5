#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swseg/metrics.hpp"
#include "swseg/ply.hpp"
#include "swseg/slicer.hpp"
#include "swseg/synthetic.hpp"

namespace swseg::cli {

enum class Command { Gen, Analyze, Slice, Encode, Decode, Compare };

/// Bad command line. what() carries the message, usage() the help text.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, std::string usage)
      : std::runtime_error(message), usage_(std::move(usage)) {}
  const std::string& usage() const { return usage_; }

 private:
  std::string usage_;
};

struct Invocation {
  Command command = Command::Gen;
  std::string input;
  std::string output;
  std::string plan_path;    ///< slice: plan output; encode: optional plan output
  std::string json_path;    ///< compare: optional JSON mirror
  std::string emit_dir;     ///< slice: per-slice PLY directory
  PlyFormat format = PlyFormat::BinaryLittleEndian;
  SlicerConfig slicer;
  std::vector<Baseline> baselines{Baseline::SingleLayer, Baseline::DualLayer};
  int thickness = 4;
  // gen
  SynthKind kind = SynthKind::Cube;
  SynthParams params;
  std::optional<std::uint64_t> seed;
  bool help = false;
  std::string help_text;
};

/// argv excludes the program name. Throws UsageError.
Invocation parse_args(const std::vector<std::string>& args);

/// Exit code: 0 on success, 1 on runtime failure (message on stderr).
int run(const Invocation& inv);

/// parse_args + run with exit code 2 on usage errors.
int main_entry(const std::vector<std::string>& args);

}  // namespace swseg::cli
