#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swseg/cloud.hpp"
#include "swseg/slicer.hpp"

namespace swseg {

// SWSG container, all multi-byte fields big-endian:
//   "SWSG" | version u8 | bit depth u8 | theta u16 | overlap u8 | slice count u32
// then one byte-aligned record per slice:
//   axis 2 | sign 1 | terminal 1 | base B | ext_width-1 16 | offset_bits-1 4 |
//   point count 32 | color flag 1 | points (offset d, u B, v B [, r g b 8 each])
// padded with zero bits to the next byte.

inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr int kContainerHeaderBits = 13 * 8;

/// Depth-offset width for a slice: ceil(log2(ext_width)), at least 1.
int offset_bits_for(std::uint32_t ext_width);

/// Record header size for bit depth B.
inline constexpr int record_header_bits(int bit_depth) { return 57 + bit_depth; }

struct StreamHeader {
  int bit_depth = kDefaultBitDepth;
  int theta = 64;
  int overlap = 0;
  std::uint32_t slice_count = 0;
};

struct SliceRecord {
  Side side;
  bool terminal = false;
  std::uint32_t base = 0;       ///< low end of the extended range
  std::uint32_t ext_width = 1;  ///< extended range width
  bool has_color = false;
  std::vector<Point> points;    ///< absolute coordinates, in payload order
  std::vector<Rgb> colors;      ///< parallel to points when has_color

  int offset_bits() const { return offset_bits_for(ext_width); }
};

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { BadMagic, UnsupportedVersion, Truncated, OffsetOutOfRange, TrailingBytes, BadRecord };

  DecodeError(Kind kind, std::string message, long record = -1)
      : std::runtime_error(std::move(message)), kind_(kind), record_(record) {}

  Kind kind() const { return kind_; }
  /// Index of the failing record, -1 for container-level errors.
  long record() const { return record_; }

 private:
  Kind kind_;
  long record_;
};

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds one record per extracted slice. Payload points are ordered by
/// (offset, u, v) so the stream is canonical.
std::vector<SliceRecord> make_records(std::span<const ExtractedSlice> slices, int bit_depth);

std::vector<std::uint8_t> encode_records(const StreamHeader& header,
                                         std::span<const SliceRecord> records);

/// Throws SlicerError on a plan/cloud mismatch.
std::vector<std::uint8_t> encode(const PointCloud& cloud, const SlicePlan& plan);

struct DecodedStream {
  StreamHeader header;
  std::vector<SliceRecord> records;
  PointCloud cloud;  ///< union of all records, duplicates merged
  /// Plan echo. The container stores extended ranges only, so each core
  /// equals its extended range, point counts include overlap points, psi is
  /// 0 and threshold_frac is 0.
  SlicePlan plan;
};

DecodedStream decode(std::span<const std::uint8_t> bytes);

struct SliceBits {
  std::size_t points = 0;
  int offset_bits = 0;
  std::size_t header_bits = 0;
  std::size_t payload_bits = 0;
  std::size_t padding_bits = 0;
};

struct BitBudget {
  std::size_t container_bits = kContainerHeaderBits;
  std::vector<SliceBits> slices;
  std::size_t header_bits = 0;   ///< sum of record headers
  std::size_t payload_bits = 0;
  std::size_t padding_bits = 0;
  std::size_t naive_bits = 0;    ///< 3 * B * original point count

  std::size_t total_bits() const { return container_bits + header_bits + payload_bits + padding_bits; }
};

SliceBits slice_bits(std::size_t points, std::uint32_t ext_width, int bit_depth, bool color);

BitBudget bit_budget(std::span<const ExtractedSlice> slices, int bit_depth, bool color,
                     std::size_t original_size);
BitBudget bit_budget(const PointCloud& cloud, const SlicePlan& plan);

}  // namespace swseg
