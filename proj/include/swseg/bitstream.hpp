#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace swseg {

/// MSB-first bit packer.
class BitWriter {
 public:
  void put(std::uint64_t value, int bits);
  /// Zero-pads to the next byte boundary; returns the number of pad bits.
  int align();

  std::size_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  int free_ = 8;  ///< unused low bits in the last byte
  std::size_t bits_ = 0;
};

/// Reads what BitWriter produced. `get` returns false on overrun.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool get(int bits, std::uint64_t& out);
  /// Skips to the next byte boundary; false if any skipped bit is set.
  bool align();

  std::size_t bit_pos() const { return pos_; }
  std::size_t byte_pos() const { return (pos_ + 7) / 8; }
  std::size_t remaining_bits() const { return bytes_.size() * 8 - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace swseg
