#include "swseg/ply.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace swseg {
namespace {

enum class Scalar { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<Scalar> parse_scalar(const std::string& t) {
  if (t == "char" || t == "int8") return Scalar::Int8;
  if (t == "uchar" || t == "uint8") return Scalar::UInt8;
  if (t == "short" || t == "int16") return Scalar::Int16;
  if (t == "ushort" || t == "uint16") return Scalar::UInt16;
  if (t == "int" || t == "int32") return Scalar::Int32;
  if (t == "uint" || t == "uint32") return Scalar::UInt32;
  if (t == "float" || t == "float32") return Scalar::Float32;
  if (t == "double" || t == "float64") return Scalar::Float64;
  return std::nullopt;
}

std::size_t scalar_size(Scalar s) {
  switch (s) {
    case Scalar::Int8:
    case Scalar::UInt8: return 1;
    case Scalar::Int16:
    case Scalar::UInt16: return 2;
    case Scalar::Int32:
    case Scalar::UInt32:
    case Scalar::Float32: return 4;
    default: return 8;
  }
}

struct Property {
  std::string name;
  Scalar type = Scalar::Float32;
  bool is_list = false;
  Scalar count_type = Scalar::UInt8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> props;
};

struct Header {
  PlyFormat format = PlyFormat::Ascii;
  std::vector<Element> elements;
  std::size_t body_offset = 0;
  std::size_t body_line = 0;  ///< 1-based line number of the first body line
};

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw PlyError("PLY parse error at line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail_byte(std::size_t offset, const std::string& what) {
  throw PlyError("PLY parse error at byte " + std::to_string(offset) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

Header parse_header(std::span<const std::uint8_t> bytes) {
  Header h;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool saw_format = false;

  auto next_line = [&]() -> std::optional<std::string> {
    if (pos >= bytes.size()) return std::nullopt;
    std::size_t end = pos;
    while (end < bytes.size() && bytes[end] != '\n') ++end;
    std::string line(reinterpret_cast<const char*>(bytes.data()) + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = end < bytes.size() ? end + 1 : end;
    ++line_no;
    return line;
  };

  auto first = next_line();
  if (!first || *first != "ply") fail_line(1, "missing 'ply' magic");

  while (true) {
    auto line = next_line();
    if (!line) fail_line(line_no, "header ends without 'end_header'");
    auto tok = split_ws(*line);
    if (tok.empty()) continue;
    if (tok[0] == "end_header") break;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() != 3) fail_line(line_no, "malformed format line");
      if (tok[1] == "ascii") {
        h.format = PlyFormat::Ascii;
      } else if (tok[1] == "binary_little_endian") {
        h.format = PlyFormat::BinaryLittleEndian;
      } else {
        fail_line(line_no, "unsupported format '" + tok[1] + "'");
      }
      saw_format = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) fail_line(line_no, "malformed element line");
      Element e;
      e.name = tok[1];
      auto [p, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), e.count);
      if (ec != std::errc{} || p != tok[2].data() + tok[2].size())
        fail_line(line_no, "bad element count '" + tok[2] + "'");
      h.elements.push_back(e);
    } else if (tok[0] == "property") {
      if (h.elements.empty()) fail_line(line_no, "property before any element");
      Property prop;
      if (tok.size() == 5 && tok[1] == "list") {
        auto ct = parse_scalar(tok[2]);
        auto vt = parse_scalar(tok[3]);
        if (!ct || !vt) fail_line(line_no, "unknown list property type");
        prop.is_list = true;
        prop.count_type = *ct;
        prop.type = *vt;
        prop.name = tok[4];
      } else if (tok.size() == 3) {
        auto t = parse_scalar(tok[1]);
        if (!t) fail_line(line_no, "unknown property type '" + tok[1] + "'");
        prop.type = *t;
        prop.name = tok[2];
      } else {
        fail_line(line_no, "malformed property line");
      }
      h.elements.back().props.push_back(prop);
    } else {
      fail_line(line_no, "unexpected header keyword '" + tok[0] + "'");
    }
  }
  if (!saw_format) fail_line(line_no, "missing format line");
  h.body_offset = pos;
  h.body_line = line_no + 1;
  return h;
}

struct VertexLayout {
  int x = -1, y = -1, z = -1, r = -1, g = -1, b = -1;
};

VertexLayout vertex_layout(const Element& e) {
  VertexLayout l;
  for (int i = 0; i < static_cast<int>(e.props.size()); ++i) {
    const auto& p = e.props[i];
    if (p.is_list) continue;
    if (p.name == "x") l.x = i;
    if (p.name == "y") l.y = i;
    if (p.name == "z") l.z = i;
    if (p.name == "red") l.r = i;
    if (p.name == "green") l.g = i;
    if (p.name == "blue") l.b = i;
  }
  return l;
}

template <class T>
T load_le(const std::uint8_t* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    auto* c = reinterpret_cast<std::uint8_t*>(&v);
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(c[i], c[sizeof(T) - 1 - i]);
  }
  return v;
}

double load_scalar(Scalar s, const std::uint8_t* p) {
  switch (s) {
    case Scalar::Int8: return load_le<std::int8_t>(p);
    case Scalar::UInt8: return load_le<std::uint8_t>(p);
    case Scalar::Int16: return load_le<std::int16_t>(p);
    case Scalar::UInt16: return load_le<std::uint16_t>(p);
    case Scalar::Int32: return load_le<std::int32_t>(p);
    case Scalar::UInt32: return load_le<std::uint32_t>(p);
    case Scalar::Float32: return load_le<float>(p);
    default: return load_le<double>(p);
  }
}

class CoordSink {
 public:
  explicit CoordSink(std::size_t n, bool colors) {
    points_.reserve(n);
    if (colors) colors_.reserve(n);
  }

  // `where` describes the location for error messages.
  void add(double x, double y, double z, const std::string& where) {
    points_.push_back({coord(x, where), coord(y, where), coord(z, where)});
  }
  void add_color(double r, double g, double b) {
    colors_.push_back({channel(r), channel(g), channel(b)});
  }

  std::vector<Point> points_;
  std::vector<Rgb> colors_;

 private:
  static std::uint16_t coord(double v, const std::string& where) {
    if (!std::isfinite(v)) throw PlyError("PLY parse error at " + where + ": non-finite coordinate");
    const double f = std::floor(v);
    if (f < 0) throw PlyError("PLY parse error at " + where + ": negative coordinate");
    if (f >= 65536.0) throw PlyError("PLY parse error at " + where + ": coordinate >= 2^16");
    return static_cast<std::uint16_t>(f);
  }
  static std::uint8_t channel(double v) {
    if (!(v > 0)) return 0;
    if (v >= 255) return 255;
    return static_cast<std::uint8_t>(v);
  }
};

PlyLoad finish(CoordSink& sink, const Header& h, std::size_t declared) {
  PlyLoad out;
  out.vertices = declared;
  out.format = h.format;
  out.cloud = PointCloud::build(std::move(sink.points_), std::move(sink.colors_), std::nullopt,
                                &out.merged);
  return out;
}

PlyLoad read_ascii(std::span<const std::uint8_t> bytes, const Header& h) {
  std::string body(reinterpret_cast<const char*>(bytes.data()) + h.body_offset,
                   bytes.size() - h.body_offset);
  std::istringstream in(body);
  std::size_t line_no = h.body_line - 1;
  std::size_t declared = 0;
  std::optional<CoordSink> sink;

  auto read_record = [&]() -> std::vector<std::string> {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      auto tok = split_ws(line);
      if (!tok.empty()) return tok;
    }
    return {};
  };

  for (const auto& e : h.elements) {
    const bool is_vertex = e.name == "vertex";
    VertexLayout l;
    if (is_vertex) {
      l = vertex_layout(e);
      if (l.x < 0 || l.y < 0 || l.z < 0) fail_line(h.body_line, "vertex element lacks x/y/z");
      declared = e.count;
      sink.emplace(e.count, l.r >= 0 && l.g >= 0 && l.b >= 0);
    }
    for (std::size_t i = 0; i < e.count; ++i) {
      auto tok = read_record();
      if (tok.empty()) {
        fail_line(line_no + 1, "truncated body: element '" + e.name + "' declares " +
                                   std::to_string(e.count) + " records, found " +
                                   std::to_string(i));
      }
      // Walk the record token by token so list properties are honored.
      std::vector<double> vals(e.props.size(), 0.0);
      std::size_t t = 0;
      auto take = [&]() -> double {
        if (t >= tok.size()) fail_line(line_no, "record has too few values");
        double v = 0;
        const auto& s = tok[t++];
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size())
          fail_line(line_no, "bad number '" + s + "'");
        return v;
      };
      for (std::size_t k = 0; k < e.props.size(); ++k) {
        if (e.props[k].is_list) {
          const double n = take();
          if (n < 0) fail_line(line_no, "negative list length");
          for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) take();
        } else {
          vals[k] = take();
        }
      }
      if (t != tok.size()) fail_line(line_no, "record has extra values");
      if (is_vertex) {
        const std::string where = "line " + std::to_string(line_no);
        sink->add(vals[l.x], vals[l.y], vals[l.z], where);
        if (l.r >= 0 && l.g >= 0 && l.b >= 0) sink->add_color(vals[l.r], vals[l.g], vals[l.b]);
      }
    }
  }
  if (!sink) fail_line(h.body_line, "no vertex element");
  return finish(*sink, h, declared);
}

PlyLoad read_binary(std::span<const std::uint8_t> bytes, const Header& h) {
  std::size_t pos = h.body_offset;
  std::size_t declared = 0;
  std::optional<CoordSink> sink;

  auto need = [&](std::size_t n, const std::string& what) {
    if (bytes.size() - pos < n) fail_byte(pos, "truncated body while reading " + what);
  };

  for (const auto& e : h.elements) {
    const bool is_vertex = e.name == "vertex";
    VertexLayout l;
    if (is_vertex) {
      l = vertex_layout(e);
      if (l.x < 0 || l.y < 0 || l.z < 0) fail_byte(pos, "vertex element lacks x/y/z");
      declared = e.count;
      sink.emplace(e.count, l.r >= 0 && l.g >= 0 && l.b >= 0);
    }
    std::vector<double> vals(e.props.size(), 0.0);
    for (std::size_t i = 0; i < e.count; ++i) {
      const std::size_t record_start = pos;
      for (std::size_t k = 0; k < e.props.size(); ++k) {
        const auto& p = e.props[k];
        if (p.is_list) {
          need(scalar_size(p.count_type), e.name + " list length");
          const double n = load_scalar(p.count_type, bytes.data() + pos);
          pos += scalar_size(p.count_type);
          if (n < 0) fail_byte(pos, "negative list length");
          const std::size_t len = static_cast<std::size_t>(n) * scalar_size(p.type);
          need(len, e.name + " list");
          pos += len;
        } else {
          need(scalar_size(p.type), "'" + e.name + "' record " + std::to_string(i));
          vals[k] = load_scalar(p.type, bytes.data() + pos);
          pos += scalar_size(p.type);
        }
      }
      if (is_vertex) {
        const std::string where = "byte " + std::to_string(record_start);
        sink->add(vals[l.x], vals[l.y], vals[l.z], where);
        if (l.r >= 0 && l.g >= 0 && l.b >= 0) sink->add_color(vals[l.r], vals[l.g], vals[l.b]);
      }
    }
  }
  if (!sink) fail_byte(h.body_offset, "no vertex element");
  return finish(*sink, h, declared);
}

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  std::uint8_t buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  out.insert(out.end(), buf, buf + sizeof(T));
}

}  // namespace

PlyLoad read_ply(std::span<const std::uint8_t> bytes) {
  const Header h = parse_header(bytes);
  return h.format == PlyFormat::Ascii ? read_ascii(bytes, h) : read_binary(bytes, h);
}

PlyLoad read_ply_file(const std::string& path) { return read_ply(read_file_bytes(path)); }

std::vector<std::uint8_t> write_ply(const PointCloud& cloud, PlyFormat format) {
  std::string header = "ply\n";
  header += format == PlyFormat::Ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n";
  header += "element vertex " + std::to_string(cloud.size()) + "\n";
  header += "property uint16 x\nproperty uint16 y\nproperty uint16 z\n";
  if (cloud.has_colors()) header += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  header += "end_header\n";

  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto pts = cloud.points();
  const auto cols = cloud.colors();
  if (format == PlyFormat::Ascii) {
    std::string body;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      body += std::to_string(pts[i].x) + ' ' + std::to_string(pts[i].y) + ' ' +
              std::to_string(pts[i].z);
      if (cloud.has_colors()) {
        body += ' ' + std::to_string(cols[i].r) + ' ' + std::to_string(cols[i].g) + ' ' +
                std::to_string(cols[i].b);
      }
      body += '\n';
    }
    out.insert(out.end(), body.begin(), body.end());
  } else {
    out.reserve(out.size() + pts.size() * (cloud.has_colors() ? 9 : 6));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      put_le(out, pts[i].x);
      put_le(out, pts[i].y);
      put_le(out, pts[i].z);
      if (cloud.has_colors()) {
        out.push_back(cols[i].r);
        out.push_back(cols[i].g);
        out.push_back(cols[i].b);
      }
    }
  }
  return out;
}

void write_ply_file(const std::string& path, const PointCloud& cloud, PlyFormat format) {
  write_file_bytes(path, write_ply(cloud, format));
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace swseg
