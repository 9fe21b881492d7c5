#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swseg/cloud.hpp"

namespace swseg {

enum class PlyFormat { Ascii, BinaryLittleEndian };

class PlyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlyLoad {
  PointCloud cloud;
  std::size_t vertices = 0;  ///< as declared in the header
  std::size_t merged = 0;    ///< duplicate coordinates folded into earlier points
  PlyFormat format = PlyFormat::Ascii;
};

/// Parses a PLY vertex element (x/y/z plus optional red/green/blue).
/// Floating coordinates are floored. Other elements are skipped.
/// Throws PlyError naming the failing line or byte offset.
PlyLoad read_ply(std::span<const std::uint8_t> bytes);
PlyLoad read_ply_file(const std::string& path);

/// Coordinates are written as uint16, colors as uchar when present.
std::vector<std::uint8_t> write_ply(const PointCloud& cloud, PlyFormat format);
void write_ply_file(const std::string& path, const PointCloud& cloud, PlyFormat format);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace swseg
