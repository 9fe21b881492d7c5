#include "swseg/bitstream.hpp"

namespace swseg {

void BitWriter::put(std::uint64_t value, int bits) {
  for (int i = bits - 1; i >= 0; --i) {
    if (free_ == 8) bytes_.push_back(0);
    --free_;
    if ((value >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(1u << free_);
    if (free_ == 0) free_ = 8;
  }
  bits_ += static_cast<std::size_t>(bits);
}

int BitWriter::align() {
  if (free_ == 8) return 0;
  const int pad = free_;
  free_ = 8;
  bits_ += static_cast<std::size_t>(pad);
  return pad;
}

bool BitReader::get(int bits, std::uint64_t& out) {
  if (remaining_bits() < static_cast<std::size_t>(bits)) return false;
  out = 0;
  for (int i = 0; i < bits; ++i, ++pos_) {
    const unsigned bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    out = (out << 1) | bit;
  }
  return true;
}

bool BitReader::align() {
  bool clean = true;
  while (pos_ % 8 != 0) {
    if ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u) clean = false;
    ++pos_;
  }
  return clean;
}

}  // namespace swseg
