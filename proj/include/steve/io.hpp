#pragma once

// File formats: .st4 tet meshes, raw volume header + blobs, OBJ and PLY slices.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "steve/error.hpp"
#include "steve/field.hpp"
#include "steve/slicing.hpp"
#include "steve/tessellation.hpp"

namespace steve {

/// Decimal text that parses back to the same double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// .st4

inline void write_st4(std::ostream& out, const TetMesh4& m) {
  out << "st4 1\n";
  out << "points " << m.vertices.size() << '\n';
  for (const auto& v : m.vertices) {
    out << format_real(v.pos[0]) << ' ' << format_real(v.pos[1]) << ' ' << format_real(v.pos[2]) << ' '
        << format_real(v.pos[3]) << '\n';
  }
  out << "tets " << m.tets.size() << '\n';
  for (const auto& t : m.tets) out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' ' << t.v[3] << '\n';
  out << "normals " << m.tets.size() << '\n';
  for (const auto& t : m.tets) {
    out << format_real(t.normal[0]) << ' ' << format_real(t.normal[1]) << ' ' << format_real(t.normal[2]) << ' '
        << format_real(t.normal[3]) << '\n';
  }
  for (std::size_t a = 0; a < m.attr_names.size(); ++a) {
    out << "attr " << m.attr_names[a] << ' ' << m.vertices.size() << '\n';
    for (const auto& v : m.vertices) out << format_real(v.attrs[a]) << '\n';
  }
}

namespace detail {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& tok) { return static_cast<bool>(in_ >> tok); }

  std::string word(const char* what) {
    std::string tok;
    if (!next(tok)) fail(ErrorKind::Format, std::string("unexpected end of file, expected ") + what);
    return tok;
  }

  void expect(const std::string& keyword) {
    const std::string tok = word(keyword.c_str());
    if (tok != keyword) fail(ErrorKind::Format, "expected '" + keyword + "', found '" + tok + "'");
  }

  double real(const char* what) {
    const std::string tok = word(what);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) fail(ErrorKind::Format, std::string("malformed number for ") + what + ": '" + tok + "'");
    if (!std::isfinite(v)) fail(ErrorKind::NonFinite, std::string("non-finite value for ") + what);
    return v;
  }

  std::uint64_t count(const char* what) {
    const std::string tok = word(what);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      fail(ErrorKind::Format, std::string("malformed count for ") + what + ": '" + tok + "'");
    }
    return std::stoull(tok);
  }

 private:
  std::istream& in_;
};

}  // namespace detail

inline TetMesh4 read_st4(std::istream& in) {
  detail::TokenReader r(in);
  r.expect("st4");
  if (r.count("version") != 1) fail(ErrorKind::Format, "unsupported st4 version");
  TetMesh4 m;
  r.expect("points");
  const auto np = r.count("point count");
  m.vertices.resize(np);
  for (auto& v : m.vertices) {
    for (double& c : v.pos) c = r.real("point coordinate");
  }
  r.expect("tets");
  const auto nt = r.count("tet count");
  m.tets.resize(nt);
  for (auto& t : m.tets) {
    for (auto& i : t.v) {
      const auto idx = r.count("tet index");
      if (idx >= np) fail(ErrorKind::Format, "tet index out of range");
      i = static_cast<std::uint32_t>(idx);
    }
  }
  r.expect("normals");
  if (r.count("normal count") != nt) fail(ErrorKind::SizeMismatch, "normal count differs from tet count");
  for (auto& t : m.tets) {
    for (double& c : t.normal) c = r.real("normal component");
  }
  std::string tok;
  while (r.next(tok)) {
    if (tok != "attr") fail(ErrorKind::Format, "unexpected token '" + tok + "'");
    const std::string name = r.word("attribute name");
    if (r.count("attribute count") != np) fail(ErrorKind::SizeMismatch, "attribute '" + name + "' count differs from point count");
    m.attr_names.push_back(name);
    for (auto& v : m.vertices) v.attrs.push_back(r.real("attribute value"));
  }
  return m;
}

inline void save_st4(const std::filesystem::path& path, const TetMesh4& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  write_st4(out, m);
  if (!out) fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

inline TetMesh4 load_st4(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return read_st4(in);
}

// ---------------------------------------------------------------------------
// Volumes

struct VolumeHeader {
  Dims4 dims{};
  Vec4 spacing{1, 1, 1, 1};
  Vec4 origin{0, 0, 0, 0};
  std::string dtype = "f32le";
  std::string order = "x-fastest";
  std::filesystem::path data;
  std::vector<std::pair<std::string, std::filesystem::path>> aux;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  return w;
}

template <class T, std::size_t N>
std::array<T, N> parse_values(const std::string& key, const std::string& value) {
  const auto w = split_words(value);
  if (w.size() != N) fail(ErrorKind::Format, "'" + key + "' expects " + std::to_string(N) + " values");
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    std::size_t used = 0;
    try {
      if constexpr (std::is_integral_v<T>) {
        out[i] = static_cast<T>(std::stoll(w[i], &used));
      } else {
        out[i] = std::stod(w[i], &used);
      }
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w[i].size()) fail(ErrorKind::Format, "malformed value '" + w[i] + "' for '" + key + "'");
  }
  return out;
}

inline std::vector<double> read_f32le(const std::filesystem::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open data file '" + path.string() + "'");
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::uint64_t>(in.tellg());
  if (bytes != 4 * static_cast<std::uint64_t>(count)) {
    fail(ErrorKind::SizeMismatch, "'" + path.string() + "' holds " + std::to_string(bytes) + " bytes, expected " +
                                      std::to_string(4 * static_cast<std::uint64_t>(count)));
  }
  in.seekg(0);
  std::vector<unsigned char> raw(bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(bytes));
  if (!in) fail(ErrorKind::Io, "failed reading '" + path.string() + "'");
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t u = std::uint32_t(raw[4 * i]) | std::uint32_t(raw[4 * i + 1]) << 8 |
                            std::uint32_t(raw[4 * i + 2]) << 16 | std::uint32_t(raw[4 * i + 3]) << 24;
    const float f = std::bit_cast<float>(u);
    if (!std::isfinite(f)) fail(ErrorKind::NonFinite, "non-finite sample in '" + path.string() + "'");
    v[i] = f;
  }
  return v;
}

inline void write_f32le(const std::filesystem::path& path, std::span<const double> values) {
  std::vector<unsigned char> raw(4 * values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto u = std::bit_cast<std::uint32_t>(static_cast<float>(values[i]));
    for (int b = 0; b < 4; ++b) raw[4 * i + b] = static_cast<unsigned char>(u >> (8 * b));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

}  // namespace detail

/// Parses a volume header. Relative data paths are kept as written.
inline VolumeHeader parse_volume_header(std::istream& in) {
  VolumeHeader h;
  bool have_dims = false, have_data = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Format, "header line " + std::to_string(lineno) + " lacks '='");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "dims") {
      const auto d = detail::parse_values<long long, 4>(key, value);
      for (int a = 0; a < 4; ++a) {
        if (d[a] <= 0 || d[a] > (1 << 20)) fail(ErrorKind::Format, "dims must be positive");
        h.dims[a] = static_cast<int>(d[a]);
      }
      have_dims = true;
    } else if (key == "spacing") {
      h.spacing = detail::parse_values<double, 4>(key, value);
    } else if (key == "origin") {
      h.origin = detail::parse_values<double, 4>(key, value);
    } else if (key == "dtype") {
      if (value != "f32le") fail(ErrorKind::UnknownDtype, "unsupported dtype '" + value + "'");
      h.dtype = value;
    } else if (key == "order") {
      if (value != "x-fastest") fail(ErrorKind::Format, "unsupported order '" + value + "'");
      h.order = value;
    } else if (key == "data") {
      if (value.empty()) fail(ErrorKind::Format, "empty data path");
      h.data = value;
      have_data = true;
    } else if (key == "aux") {
      const auto w = detail::split_words(value);
      if (w.size() != 2) fail(ErrorKind::Format, "'aux' expects a name and a path");
      h.aux.emplace_back(w[0], w[1]);
    } else {
      fail(ErrorKind::Format, "unknown header key '" + key + "'");
    }
  }
  if (!have_dims) fail(ErrorKind::Format, "header lacks 'dims'");
  if (!have_data) fail(ErrorKind::Format, "header lacks 'data'");
  return h;
}

/// Loads header + blobs. Data paths are resolved relative to the header.
inline ToxelField load_volume(const std::filesystem::path& header_path) {
  std::ifstream in(header_path);
  if (!in) fail(ErrorKind::Io, "cannot open header '" + header_path.string() + "'");
  const VolumeHeader h = parse_volume_header(in);
  const auto dir = header_path.parent_path();
  auto resolve = [&](const std::filesystem::path& p) { return p.is_absolute() ? p : dir / p; };
  std::size_t n = 1;
  for (int d : h.dims) n *= static_cast<std::size_t>(d);
  ToxelField field(h.dims, detail::read_f32le(resolve(h.data), n), h.spacing, h.origin);
  for (const auto& [name, path] : h.aux) field.add_aux(name, detail::read_f32le(resolve(path), n));
  return field;
}

/// Writes `<stem>.hdr` style header plus one raw blob per channel next to it.
inline void save_volume(const std::filesystem::path& header_path, const ToxelField& field) {
  const auto dir = header_path.parent_path();
  const std::string stem = header_path.stem().string();
  const std::string data_name = stem + ".raw";
  detail::write_f32le(dir / data_name, field.scalar());
  std::ofstream out(header_path);
  if (!out) fail(ErrorKind::Io, "cannot open '" + header_path.string() + "' for writing");
  const auto& d = field.dims();
  const auto& s = field.spacing();
  const auto& o = field.origin();
  out << "dims = " << d[0] << ' ' << d[1] << ' ' << d[2] << ' ' << d[3] << '\n';
  out << "spacing = " << format_real(s[0]) << ' ' << format_real(s[1]) << ' ' << format_real(s[2]) << ' '
      << format_real(s[3]) << '\n';
  out << "origin = " << format_real(o[0]) << ' ' << format_real(o[1]) << ' ' << format_real(o[2]) << ' '
      << format_real(o[3]) << '\n';
  out << "dtype = f32le\norder = x-fastest\n";
  out << "data = " << data_name << '\n';
  for (const auto& name : field.aux_names()) {
    const std::string aux_name = stem + "." + name + ".raw";
    detail::write_f32le(dir / aux_name, field.aux(name));
    out << "aux = " << name << ' ' << aux_name << '\n';
  }
  if (!out) fail(ErrorKind::Io, "failed writing '" + header_path.string() + "'");
}

// ---------------------------------------------------------------------------
// Triangle meshes

/// Area-weighted vertex normals.
inline std::vector<Vec3> vertex_normals(const TriMesh3& m) {
  std::vector<Vec3> n(m.vertices.size(), Vec3{});
  for (const auto& t : m.triangles) {
    const Vec3 c = cross(m.vertices[t[1]] - m.vertices[t[0]], m.vertices[t[2]] - m.vertices[t[0]]);
    for (auto i : t) n[i] = n[i] + c;
  }
  for (auto& v : n) {
    const double len = norm(v);
    if (len > 0.0) v = (1.0 / len) * v;
  }
  return n;
}

inline void write_obj(std::ostream& out, const TriMesh3& m) {
  const auto normals = vertex_normals(m);
  for (const auto& v : m.vertices) {
    out << "v " << format_real(v[0]) << ' ' << format_real(v[1]) << ' ' << format_real(v[2]) << '\n';
  }
  for (const auto& n : normals) {
    out << "vn " << format_real(n[0]) << ' ' << format_real(n[1]) << ' ' << format_real(n[2]) << '\n';
  }
  for (const auto& t : m.triangles) {
    out << 'f';
    for (auto i : t) out << ' ' << i + 1 << "//" << i + 1;
    out << '\n';
  }
}

inline void write_ply(std::ostream& out, const TriMesh3& m) {
  const auto normals = vertex_normals(m);
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << m.vertices.size() << '\n';
  for (const char* p : {"x", "y", "z", "nx", "ny", "nz"}) out << "property double " << p << '\n';
  for (const auto& name : m.attr_names) out << "property double " << name << '\n';
  out << "element face " << m.triangles.size() << '\n';
  out << "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const auto& v = m.vertices[i];
    const auto& n = normals[i];
    out << format_real(v[0]) << ' ' << format_real(v[1]) << ' ' << format_real(v[2]) << ' ' << format_real(n[0])
        << ' ' << format_real(n[1]) << ' ' << format_real(n[2]);
    for (double a : m.attrs[i]) out << ' ' << format_real(a);
    out << '\n';
  }
  for (const auto& t : m.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace steve
