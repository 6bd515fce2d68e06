#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "steve/error.hpp"
#include "steve/topology.hpp"
#include "steve/vec.hpp"

namespace steve {

enum class ConnectivityMode { Connect, Disconnect, Mixed };
enum class Placement { Midpoint, Interpolate };

struct ExtractionConfig {
  double isovalue = 0.0;
  ConnectivityMode mode = ConnectivityMode::Mixed;
  Placement placement = Placement::Midpoint;
  double clamp = 1e-3;   // support points stay within [clamp, 1 - clamp] of the range vector
  bool strict = false;   // active iff value > isovalue (default: >=)
  int workers = 0;       // 0 selects STEVE_WORKERS or the hardware concurrency
};

/// Activity predicate: value >= isovalue (or > when strict).
inline bool is_active(double value, double isovalue, bool strict = false) {
  if (!std::isfinite(value) || !std::isfinite(isovalue)) {
    fail(ErrorKind::NonFinite, "activity test on a non-finite value");
  }
  return strict ? value > isovalue : value >= isovalue;
}

using Dims4 = std::array<int, 4>;

/// Scalar samples on a homogeneous 4D grid (x fastest, then y, z, t) with
/// optional auxiliary channels of the same shape.
class ToxelField {
 public:
  ToxelField() = default;

  ToxelField(Dims4 dims, std::vector<double> scalar, Vec4 spacing = {1, 1, 1, 1},
             Vec4 origin = {0, 0, 0, 0})
      : dims_(dims), spacing_(spacing), origin_(origin), scalar_(std::move(scalar)) {
    std::size_t n = 1;
    for (int d : dims_) {
      if (d <= 0) fail(ErrorKind::Format, "field dimensions must be positive");
      n *= static_cast<std::size_t>(d);
    }
    for (double s : spacing_) {
      if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorKind::Format, "grid spacing must be positive");
    }
    for (double o : origin_) {
      if (!std::isfinite(o)) fail(ErrorKind::NonFinite, "grid origin must be finite");
    }
    if (scalar_.size() != n) fail(ErrorKind::SizeMismatch, "scalar count does not match dimensions");
    check_finite(scalar_, "scalar");
  }

  const Dims4& dims() const { return dims_; }
  const Vec4& spacing() const { return spacing_; }
  const Vec4& origin() const { return origin_; }
  std::size_t size() const { return scalar_.size(); }

  std::size_t index(const Lattice4& p) const {
    return static_cast<std::size_t>(p[0]) +
           static_cast<std::size_t>(dims_[0]) *
               (static_cast<std::size_t>(p[1]) +
                static_cast<std::size_t>(dims_[1]) *
                    (static_cast<std::size_t>(p[2]) +
                     static_cast<std::size_t>(dims_[2]) * static_cast<std::size_t>(p[3])));
  }

  Lattice4 coords(std::size_t i) const {
    Lattice4 p{};
    for (int a = 0; a < 4; ++a) {
      p[a] = static_cast<int>(i % static_cast<std::size_t>(dims_[a]));
      i /= static_cast<std::size_t>(dims_[a]);
    }
    return p;
  }

  bool contains(const Lattice4& p) const {
    for (int a = 0; a < 4; ++a) {
      if (p[a] < 0 || p[a] >= dims_[a]) return false;
    }
    return true;
  }

  double value(std::size_t i) const { return scalar_[i]; }
  double value(const Lattice4& p) const { return scalar_[index(p)]; }
  std::span<const double> scalar() const { return scalar_; }

  /// World position of a grid sample.
  Vec4 world(const Lattice4& p) const {
    return {origin_[0] + p[0] * spacing_[0], origin_[1] + p[1] * spacing_[1],
            origin_[2] + p[2] * spacing_[2], origin_[3] + p[3] * spacing_[3]};
  }

  void add_aux(const std::string& name, std::vector<double> values) {
    if (values.size() != scalar_.size()) {
      fail(ErrorKind::SizeMismatch, "aux channel '" + name + "' does not match the field shape");
    }
    check_finite(values, name);
    aux_[name] = std::move(values);
  }

  bool has_aux(const std::string& name) const { return aux_.count(name) != 0; }

  std::span<const double> aux(const std::string& name) const {
    auto it = aux_.find(name);
    if (it == aux_.end()) fail(ErrorKind::Usage, "no aux channel named '" + name + "'");
    return it->second;
  }

  /// Channel names in a stable (sorted) order.
  std::vector<std::string> aux_names() const {
    std::vector<std::string> names;
    for (const auto& kv : aux_) names.push_back(kv.first);
    return names;
  }

  /// Ghost samples are forced inactive regardless of their stored value.
  bool is_ghost(std::size_t i) const { return !ghost_.empty() && ghost_[i] != 0; }
  bool has_ghosts() const { return !ghost_.empty(); }

  bool active(std::size_t i, double isovalue, bool strict = false) const {
    return !is_ghost(i) && is_active(scalar_[i], isovalue, strict);
  }

  std::size_t count_active(double isovalue, bool strict = false) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < scalar_.size(); ++i) n += active(i, isovalue, strict);
    return n;
  }

 private:
  friend ToxelField pad_ghost(const ToxelField& field);

  static void check_finite(const std::vector<double>& v, const std::string& what) {
    for (double x : v) {
      if (!std::isfinite(x)) fail(ErrorKind::NonFinite, "non-finite sample in " + what);
    }
  }

  Dims4 dims_{};
  Vec4 spacing_{1, 1, 1, 1};
  Vec4 origin_{0, 0, 0, 0};
  std::vector<double> scalar_;
  std::map<std::string, std::vector<double>> aux_;
  std::vector<std::uint8_t> ghost_;
};

/// Surrounds the field with one layer of always-inactive ghost toxels on all
/// eight bounding hyperfaces. Aux channels are padded by edge replication.
inline ToxelField pad_ghost(const ToxelField& field) {
  const Dims4& d = field.dims();
  ToxelField out;
  out.dims_ = {d[0] + 2, d[1] + 2, d[2] + 2, d[3] + 2};
  out.spacing_ = field.spacing();
  for (int a = 0; a < 4; ++a) out.origin_[a] = field.origin()[a] - field.spacing()[a];
  std::size_t n = 1;
  for (int v : out.dims_) n *= static_cast<std::size_t>(v);
  out.scalar_.assign(n, std::numeric_limits<double>::lowest());
  out.ghost_.assign(n, 1);
  std::vector<std::size_t> source(n);
  for (std::size_t i = 0; i < n; ++i) {
    Lattice4 p = out.coords(i);
    bool inside = true;
    for (int a = 0; a < 4; ++a) {
      p[a] -= 1;
      if (p[a] < 0 || p[a] >= d[a]) inside = false;
      p[a] = std::clamp(p[a], 0, d[a] - 1);
    }
    source[i] = field.index(p);
    if (inside) {
      out.scalar_[i] = field.value(source[i]);
      out.ghost_[i] = field.is_ghost(source[i]) ? 1 : 0;
    }
  }
  for (const auto& [name, values] : field.aux_) {
    std::vector<double> padded(n);
    for (std::size_t i = 0; i < n; ++i) padded[i] = values[source[i]];
    out.aux_[name] = std::move(padded);
  }
  return out;
}

/// Activity and samples of the 16 toxels of one 4-cell, indexed by SiteId.
struct CellPattern {
  std::uint16_t bits = 0;    // bit i: site i is active
  std::uint16_t ghosts = 0;  // bit i: site i is a ghost toxel
  std::array<double, 16> values{};

  bool active(int site) const { return (bits >> site) & 1u; }
  bool ghost(int site) const { return (ghosts >> site) & 1u; }
  bool trivial() const { return bits == 0 || bits == 0xFFFF; }
};

/// Pattern for an abstract cell given only activity bits (values 1 / 0).
inline CellPattern pattern_from_bits(std::uint16_t bits) {
  CellPattern p;
  p.bits = bits;
  for (int s = 0; s < kSiteCount; ++s) p.values[s] = ((bits >> s) & 1u) ? 1.0 : 0.0;
  return p;
}

/// Grid offset of each site relative to the cell's base toxel.
inline const std::array<Lattice4, kSiteCount>& site_offsets() {
  static const std::array<Lattice4, kSiteCount> offsets = [] {
    std::array<Lattice4, kSiteCount> o{};
    for (int s = 0; s < kSiteCount; ++s) o[s] = site_coords(SiteId(s));
    return o;
  }();
  return offsets;
}

inline CellPattern cell_pattern(const ToxelField& field, const Lattice4& base, double isovalue,
                                bool strict = false) {
  CellPattern p;
  const auto& off = site_offsets();
  for (int s = 0; s < kSiteCount; ++s) {
    const Lattice4 q{base[0] + off[s][0], base[1] + off[s][1], base[2] + off[s][2],
                     base[3] + off[s][3]};
    const std::size_t i = field.index(q);
    p.values[s] = field.value(i);
    if (field.is_ghost(i)) {
      p.ghosts |= static_cast<std::uint16_t>(1u << s);
    } else if (is_active(p.values[s], isovalue, strict)) {
      p.bits |= static_cast<std::uint16_t>(1u << s);
    }
  }
  return p;
}

struct CellRef {
  Lattice4 base{};
  std::size_t index = 0;  // linear index in the cell grid (x fastest)
  CellPattern pattern;
};

/// Non-trivial 4-cells of a field, in lexicographic order (x fastest).
/// Optionally restricted to the linear cell-index range [begin, end).
class CellRange {
 public:
  CellRange(const ToxelField& field, double isovalue, bool strict = false)
      : CellRange(field, isovalue, strict, 0, cell_count(field)) {}

  CellRange(const ToxelField& field, double isovalue, bool strict, std::size_t begin,
            std::size_t end)
      : field_(&field), isovalue_(isovalue), strict_(strict), begin_(begin),
        end_(std::min(end, cell_count(field))) {}

  static Dims4 cell_dims(const ToxelField& field) {
    const Dims4& d = field.dims();
    return {std::max(d[0] - 1, 0), std::max(d[1] - 1, 0), std::max(d[2] - 1, 0),
            std::max(d[3] - 1, 0)};
  }

  static std::size_t cell_count(const ToxelField& field) {
    std::size_t n = 1;
    for (int v : cell_dims(field)) n *= static_cast<std::size_t>(v);
    return n;
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = CellRef;
    using difference_type = std::ptrdiff_t;
    using pointer = const CellRef*;
    using reference = const CellRef&;

    iterator() = default;
    iterator(const CellRange* range, std::size_t pos) : range_(range), pos_(pos) { settle(); }

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++() {
      ++pos_;
      settle();
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& o) const { return pos_ == o.pos_; }

   private:
    void settle() {
      const Dims4 cd = cell_dims(*range_->field_);
      for (; pos_ < range_->end_; ++pos_) {
        std::size_t r = pos_;
        Lattice4 base{};
        for (int a = 0; a < 4; ++a) {
          base[a] = static_cast<int>(r % static_cast<std::size_t>(cd[a]));
          r /= static_cast<std::size_t>(cd[a]);
        }
        CellPattern p = cell_pattern(*range_->field_, base, range_->isovalue_, range_->strict_);
        if (p.trivial()) continue;
        current_ = {base, pos_, p};
        return;
      }
    }

    const CellRange* range_ = nullptr;
    std::size_t pos_ = 0;
    CellRef current_{};
  };

  iterator begin() const { return iterator(this, begin_); }
  iterator end() const { return iterator(this, end_); }

 private:
  const ToxelField* field_;
  double isovalue_;
  bool strict_;
  std::size_t begin_;
  std::size_t end_;
};

/// Non-trivial cells of a field (already padded, if closure at the border is wanted).
inline CellRange cells(const ToxelField& field, double isovalue, bool strict = false) {
  return CellRange(field, isovalue, strict);
}

}  // namespace steve
