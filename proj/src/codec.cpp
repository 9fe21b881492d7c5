#include "swseg/codec.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>

#include "swseg/bitstream.hpp"

namespace swseg {

int offset_bits_for(std::uint32_t ext_width) {
  if (ext_width <= 1) return 1;
  return std::bit_width(ext_width - 1);
}

std::vector<SliceRecord> make_records(std::span<const ExtractedSlice> slices, int bit_depth) {
  std::vector<SliceRecord> records;
  records.reserve(slices.size());
  for (const auto& s : slices) {
    SliceRecord r;
    r.side = s.spec.side;
    r.terminal = s.spec.terminal;
    r.base = static_cast<std::uint32_t>(s.spec.extended.lo);
    r.ext_width = static_cast<std::uint32_t>(s.spec.extended.width());
    r.has_color = s.cloud.has_colors();

    const Axis axis = r.side.axis;
    std::vector<std::size_t> order(s.cloud.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto canon = [&](std::size_t i) {
      const Point& p = s.cloud[i];
      const auto [u, v] = plane_coords(p, axis);
      return std::tuple{p[axis], u, v};
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return canon(a) < canon(b); });
    for (std::size_t i : order) {
      r.points.push_back(s.cloud[i]);
      if (r.has_color) r.colors.push_back(s.cloud.colors()[i]);
    }
    if (std::uint64_t{r.base} + r.ext_width > (std::uint64_t{1} << bit_depth))
      throw EncodeError("slice " + std::to_string(s.spec.index) + " exceeds the coordinate grid");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<std::uint8_t> encode_records(const StreamHeader& header,
                                         std::span<const SliceRecord> records) {
  const int b = header.bit_depth;
  if (b < 1 || b > kMaxBitDepth) throw EncodeError("bit depth out of range");
  if (header.theta < 1 || header.theta > 0xffff) throw EncodeError("theta does not fit 16 bits");
  if (header.overlap < 0 || header.overlap > 0xff) throw EncodeError("overlap does not fit 8 bits");

  BitWriter w;
  for (char c : {'S', 'W', 'S', 'G'}) w.put(static_cast<std::uint8_t>(c), 8);
  w.put(kStreamVersion, 8);
  w.put(static_cast<std::uint64_t>(b), 8);
  w.put(static_cast<std::uint64_t>(header.theta), 16);
  w.put(static_cast<std::uint64_t>(header.overlap), 8);
  w.put(records.size(), 32);

  for (std::size_t ri = 0; ri < records.size(); ++ri) {
    const SliceRecord& r = records[ri];
    const std::string where = "record " + std::to_string(ri);
    if (r.ext_width < 1 || r.ext_width > 0x10000) throw EncodeError(where + ": extended width out of range");
    if (r.base >= (1u << b)) throw EncodeError(where + ": base does not fit the bit depth");
    if (r.has_color && r.colors.size() != r.points.size()) throw EncodeError(where + ": color count mismatch");
    const int d = r.offset_bits();

    w.put(static_cast<std::uint64_t>(r.side.axis), 2);
    w.put(static_cast<std::uint64_t>(r.side.sign), 1);
    w.put(r.terminal ? 1 : 0, 1);
    w.put(r.base, b);
    w.put(r.ext_width - 1, 16);
    w.put(static_cast<std::uint64_t>(d - 1), 4);
    w.put(r.points.size(), 32);
    w.put(r.has_color ? 1 : 0, 1);
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const Point& p = r.points[i];
      const std::int64_t offset = std::int64_t{p[r.side.axis]} - r.base;
      if (offset < 0 || offset >= r.ext_width)
        throw EncodeError(where + ": point outside the extended range");
      const auto [u, v] = plane_coords(p, r.side.axis);
      w.put(static_cast<std::uint64_t>(offset), d);
      w.put(u, b);
      w.put(v, b);
      if (r.has_color) {
        w.put(r.colors[i].r, 8);
        w.put(r.colors[i].g, 8);
        w.put(r.colors[i].b, 8);
      }
    }
    w.align();
  }
  return w.take();
}

std::vector<std::uint8_t> encode(const PointCloud& cloud, const SlicePlan& plan) {
  const auto slices = extract_slices(cloud, plan);
  StreamHeader header;
  header.bit_depth = cloud.bit_depth();
  header.theta = plan.config.theta;
  header.overlap = plan.config.overlap;
  header.slice_count = static_cast<std::uint32_t>(slices.size());
  return encode_records(header, make_records(slices, cloud.bit_depth()));
}

DecodedStream decode(std::span<const std::uint8_t> bytes) {
  using Kind = DecodeError::Kind;
  BitReader r(bytes);
  std::uint64_t v = 0;

  if (bytes.size() < 4) throw DecodeError(Kind::Truncated, "stream shorter than its magic");
  if (!std::equal(bytes.begin(), bytes.begin() + 4, "SWSG"))
    throw DecodeError(Kind::BadMagic, "bad magic: expected 'SWSG'");
  if (bytes.size() * 8 < kContainerHeaderBits)
    throw DecodeError(Kind::Truncated, "truncated container header");

  DecodedStream out;
  r.get(32, v);
  r.get(8, v);
  if (v != kStreamVersion)
    throw DecodeError(Kind::UnsupportedVersion, "unsupported version " + std::to_string(v));
  r.get(8, v);
  const int b = static_cast<int>(v);
  if (b < 1 || b > kMaxBitDepth) throw DecodeError(Kind::BadRecord, "bit depth " + std::to_string(b) + " out of range");
  out.header.bit_depth = b;
  r.get(16, v);
  out.header.theta = static_cast<int>(v);
  r.get(8, v);
  out.header.overlap = static_cast<int>(v);
  r.get(32, v);
  out.header.slice_count = static_cast<std::uint32_t>(v);

  std::vector<Point> all_points;
  std::vector<Rgb> all_colors;
  bool any_color = false;

  for (std::uint32_t ri = 0; ri < out.header.slice_count; ++ri) {
    const long idx = static_cast<long>(ri);
    auto need = [&](int bits) {
      if (!r.get(bits, v))
        throw DecodeError(Kind::Truncated, "truncated stream in record " + std::to_string(ri), idx);
      return v;
    };
    SliceRecord rec;
    const auto axis = need(2);
    if (axis > 2) throw DecodeError(Kind::BadRecord, "record " + std::to_string(ri) + ": bad axis", idx);
    rec.side.axis = static_cast<Axis>(axis);
    rec.side.sign = static_cast<Sign>(need(1));
    rec.terminal = need(1) != 0;
    rec.base = static_cast<std::uint32_t>(need(b));
    rec.ext_width = static_cast<std::uint32_t>(need(16)) + 1;
    const int d = static_cast<int>(need(4)) + 1;
    const auto count = need(32);
    rec.has_color = need(1) != 0;
    if (d != offset_bits_for(rec.ext_width))
      throw DecodeError(Kind::BadRecord, "record " + std::to_string(ri) + ": offset width disagrees with extended width", idx);
    if (std::uint64_t{rec.base} + rec.ext_width > (std::uint64_t{1} << b))
      throw DecodeError(Kind::BadRecord, "record " + std::to_string(ri) + ": extended range leaves the grid", idx);
    const std::size_t per_point = static_cast<std::size_t>(d + 2 * b + (rec.has_color ? 24 : 0));
    if (count * per_point > r.remaining_bits())
      throw DecodeError(Kind::Truncated, "truncated stream in record " + std::to_string(ri), idx);

    rec.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto offset = need(d);
      if (offset >= rec.ext_width)
        throw DecodeError(Kind::OffsetOutOfRange,
                          "record " + std::to_string(ri) + ": offset " + std::to_string(offset) +
                              " >= extended width " + std::to_string(rec.ext_width), idx);
      const auto u = static_cast<std::uint16_t>(need(b));
      const auto w = static_cast<std::uint16_t>(need(b));
      rec.points.push_back(from_plane(rec.side.axis, static_cast<std::uint16_t>(rec.base + offset), u, w));
      if (rec.has_color) {
        Rgb c;
        c.r = static_cast<std::uint8_t>(need(8));
        c.g = static_cast<std::uint8_t>(need(8));
        c.b = static_cast<std::uint8_t>(need(8));
        rec.colors.push_back(c);
      }
    }
    if (!r.align())
      throw DecodeError(Kind::BadRecord, "record " + std::to_string(ri) + ": non-zero padding", idx);

    any_color = any_color || rec.has_color;
    all_points.insert(all_points.end(), rec.points.begin(), rec.points.end());
    if (rec.has_color) {
      all_colors.insert(all_colors.end(), rec.colors.begin(), rec.colors.end());
    } else {
      all_colors.resize(all_points.size());
    }

    SliceSpec spec;
    spec.index = ri;
    spec.side = rec.side;
    spec.core = AxisRange{rec.side.axis, static_cast<std::int32_t>(rec.base),
                          static_cast<std::int32_t>(rec.base + rec.ext_width)};
    spec.extended = spec.core;
    spec.point_count = rec.points.size();
    spec.terminal = rec.terminal;
    out.plan.slices.push_back(spec);
    out.records.push_back(std::move(rec));
  }
  if (r.byte_pos() != bytes.size())
    throw DecodeError(Kind::TrailingBytes,
                      std::to_string(bytes.size() - r.byte_pos()) + " trailing bytes after last record");

  if (!any_color) all_colors.clear();
  out.cloud = PointCloud::build(std::move(all_points), std::move(all_colors), b);
  out.plan.config.theta = std::max(out.header.theta, 1);
  out.plan.config.overlap = out.header.overlap;
  out.plan.config.threshold_frac = 0.0;
  out.plan.original_size = out.cloud.size();
  return out;
}

SliceBits slice_bits(std::size_t points, std::uint32_t ext_width, int bit_depth, bool color) {
  SliceBits s;
  s.points = points;
  s.offset_bits = offset_bits_for(ext_width);
  s.header_bits = static_cast<std::size_t>(record_header_bits(bit_depth));
  s.payload_bits = points * static_cast<std::size_t>(s.offset_bits + 2 * bit_depth + (color ? 24 : 0));
  const std::size_t used = s.header_bits + s.payload_bits;
  s.padding_bits = (8 - used % 8) % 8;
  return s;
}

BitBudget bit_budget(std::span<const ExtractedSlice> slices, int bit_depth, bool color,
                     std::size_t original_size) {
  BitBudget budget;
  budget.naive_bits = 3 * static_cast<std::size_t>(bit_depth) * original_size;
  for (const auto& s : slices) {
    const SliceBits sb = slice_bits(s.cloud.size(), static_cast<std::uint32_t>(s.spec.extended.width()),
                                    bit_depth, color);
    budget.header_bits += sb.header_bits;
    budget.payload_bits += sb.payload_bits;
    budget.padding_bits += sb.padding_bits;
    budget.slices.push_back(sb);
  }
  return budget;
}

BitBudget bit_budget(const PointCloud& cloud, const SlicePlan& plan) {
  const auto slices = extract_slices(cloud, plan);
  return bit_budget(slices, cloud.bit_depth(), cloud.has_colors(), cloud.size());
}

}  // namespace swseg
