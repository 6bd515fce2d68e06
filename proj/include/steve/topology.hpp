#pragma once

// Indexing scheme of a 2x2x2x2 toxel neighborhood (a "4-cell"):
//   sites   0..15  tesseract corners (toxel centers); 0-7 at t=0, 8-15 at t=1
//   edges   0..31  tesseract edge midpoints (boundary cube centers, support points)
//   faces  32..55  tesseract face centers (connectivity points)
// plus the 192-entry table of directed octant paths through the edge centers.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "steve/error.hpp"
#include "steve/table_i.hpp"

namespace steve {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2, T = 3 };
inline constexpr int kAxisCount = 4;

inline constexpr char axis_name(Axis a) { return "xyzt"[static_cast<int>(a)]; }

enum class Orientation : std::uint8_t { Plus, Minus };

inline constexpr Orientation opposite(Orientation o) {
  return o == Orientation::Plus ? Orientation::Minus : Orientation::Plus;
}

inline constexpr char orientation_symbol(Orientation o) {
  return o == Orientation::Plus ? '+' : '-';
}

using Lattice4 = std::array<int, 4>;

/// Range-checked index into one of the three point families of a 4-cell.
template <class Tag, int Lo, int Hi>
class CellIndex {
 public:
  static constexpr int kMin = Lo;
  static constexpr int kMax = Hi;
  static constexpr int kCount = Hi - Lo + 1;

  constexpr CellIndex() = default;
  constexpr explicit CellIndex(int v) : value_(v) {
    if (v < Lo || v > Hi) {
      fail(ErrorKind::Usage, "cell index " + std::to_string(v) + " outside [" +
                                 std::to_string(Lo) + "," + std::to_string(Hi) + "]");
    }
  }

  constexpr int value() const { return value_; }
  /// Zero-based slot within the family.
  constexpr int slot() const { return value_ - Lo; }

  constexpr auto operator<=>(const CellIndex&) const = default;

 private:
  int value_ = Lo;
};

using SiteId = CellIndex<struct SiteTag, 0, 15>;
using EdgeId = CellIndex<struct EdgeTag, 0, 31>;
using FaceId = CellIndex<struct FaceTag, 32, 55>;

inline constexpr int kSiteCount = 16;
inline constexpr int kEdgeCount = 32;
inline constexpr int kFaceCount = 24;
inline constexpr int kFirstFace = 32;
inline constexpr int kPointCount = 56;

inline constexpr bool is_edge_point(int id) { return id >= 0 && id < kEdgeCount; }
inline constexpr bool is_face_point(int id) { return id >= kFirstFace && id < kPointCount; }

/// Lattice position of a site. Spatial corners follow the ring
/// 0:(0,0,0) 1:(1,0,0) 2:(1,1,0) 3:(0,1,0) 4:(0,0,1) 5:(1,0,1) 6:(1,1,1) 7:(0,1,1);
/// id = ring + 8 t.
inline constexpr Lattice4 site_coords(SiteId id) {
  constexpr std::array<std::array<int, 3>, 8> ring{{
      {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}};
  const auto& r = ring[id.value() % 8];
  return {r[0], r[1], r[2], id.value() / 8};
}

inline SiteId site_at(const Lattice4& p) {
  for (int s = 0; s < kSiteCount; ++s) {
    if (site_coords(SiteId(s)) == p) return SiteId(s);
  }
  fail(ErrorKind::Usage, "lattice point is not a cell corner");
}

struct DirectedPath {
  FaceId from;
  EdgeId via;
  FaceId to;

  auto operator<=>(const DirectedPath&) const = default;
};

struct PathTriplet {
  EdgeId center;
  Orientation orientation = Orientation::Plus;
  std::array<DirectedPath, 3> paths;

  bool operator==(const PathTriplet&) const = default;
};

/// The 32 x 2 x 3 table of directed octant paths.
class PathTable {
 public:
  static constexpr int kPathCount = kEdgeCount * 2 * 3;

  PathTable() = default;

  const PathTriplet& at(EdgeId center, Orientation o) const {
    return rows_[slot(center, o)];
  }
  PathTriplet& at(EdgeId center, Orientation o) { return rows_[slot(center, o)]; }

  const std::array<PathTriplet, 64>& rows() const { return rows_; }

  bool operator==(const PathTable&) const = default;

  /// Number of individual paths (center, orientation, index) equal in both tables.
  int matching_paths(const PathTable& other) const {
    int n = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (int k = 0; k < 3; ++k) {
        n += rows_[r].paths[k] == other.rows_[r].paths[k] &&
             rows_[r].center == other.rows_[r].center &&
             rows_[r].orientation == other.rows_[r].orientation;
      }
    }
    return n;
  }

  /// The table as transcribed from the published listing.
  static PathTable transcribed() {
    std::vector<detail::TableRow> rows(detail::kTranscribedTable.begin(),
                                       detail::kTranscribedTable.end());
    return from_rows(rows);
  }

  /// Reads the `center orient from to` text form (exactly 192 lines).
  static PathTable parse(std::istream& in) {
    std::vector<detail::TableRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ls(line);
      int center = -1, from = -1, to = -1;
      std::string sign;
      if (!(ls >> center >> sign >> from >> to) || (sign != "+" && sign != "-")) {
        fail(ErrorKind::Format, "path table line " + std::to_string(lineno) + ": malformed");
      }
      std::string extra;
      if (ls >> extra) {
        fail(ErrorKind::Format, "path table line " + std::to_string(lineno) + ": trailing data");
      }
      if (!is_edge_point(center) || !is_face_point(from) || !is_face_point(to)) {
        fail(ErrorKind::Format, "path table line " + std::to_string(lineno) + ": id out of range");
      }
      rows.push_back({static_cast<std::uint8_t>(center), static_cast<std::int8_t>(sign == "+" ? 1 : -1),
                      static_cast<std::uint8_t>(from), static_cast<std::uint8_t>(to)});
    }
    return from_rows(rows);
  }

  void write(std::ostream& out) const {
    for (const auto& row : rows_) {
      for (const auto& p : row.paths) {
        out << row.center.value() << ' ' << orientation_symbol(row.orientation) << ' '
            << p.from.value() << ' ' << p.to.value() << '\n';
      }
    }
  }

 private:
  static int slot(EdgeId c, Orientation o) {
    return c.value() * 2 + (o == Orientation::Plus ? 0 : 1);
  }

  static PathTable from_rows(const std::vector<detail::TableRow>& rows) {
    if (rows.size() != static_cast<std::size_t>(kPathCount)) {
      fail(ErrorKind::Format, "path table must have exactly 192 paths, got " +
                                  std::to_string(rows.size()));
    }
    PathTable t;
    std::array<int, 64> filled{};
    for (const auto& r : rows) {
      const Orientation o = r.sign > 0 ? Orientation::Plus : Orientation::Minus;
      const int s = slot(EdgeId(r.center), o);
      if (filled[s] == 3) fail(ErrorKind::Format, "path table: more than 3 paths for one octant");
      auto& row = t.rows_[s];
      row.center = EdgeId(r.center);
      row.orientation = o;
      row.paths[filled[s]++] = {FaceId(r.from), EdgeId(r.center), FaceId(r.to)};
    }
    for (int s = 0; s < 64; ++s) {
      if (filled[s] != 3) fail(ErrorKind::Format, "path table: octant with fewer than 3 paths");
      // Each incident face once as source and once as target.
      const auto& p = t.rows_[s].paths;
      std::array<int, 3> src{p[0].from.value(), p[1].from.value(), p[2].from.value()};
      std::array<int, 3> dst{p[0].to.value(), p[1].to.value(), p[2].to.value()};
      std::sort(src.begin(), src.end());
      std::sort(dst.begin(), dst.end());
      if (src != dst || src[0] == src[1] || src[1] == src[2]) {
        fail(ErrorKind::Format, "path table: octant " + std::to_string(s / 2) +
                                    " is not a directed 3-cycle");
      }
    }
    return t;
  }

  std::array<PathTriplet, 64> rows_{};
};

/// Canonical geometry and incidence of a 4-cell, indexed by the point ids.
struct CellGeometry {
  struct Edge {
    Lattice4 base{};                 // lower endpoint
    Axis axis = Axis::X;
    std::array<int, 2> sites{};      // lower, upper
    std::array<int, 3> faces{};      // incident face ids, by ascending second axis
  };
  struct Face {
    Lattice4 base{};
    std::array<Axis, 2> axes{};
    std::array<int, 4> corners{};    // cyclic: base, +a0, +a0+a1, +a1
    std::array<int, 4> edges{};
  };

  std::array<Lattice4, kSiteCount> site_pos{};
  std::array<Edge, kEdgeCount> edges{};
  std::array<Face, kFaceCount> faces{};
  std::array<std::array<int, kAxisCount>, kSiteCount> site_edge{};  // site x axis -> edge

  const Edge& edge(EdgeId e) const { return edges[e.slot()]; }
  const Face& face(FaceId f) const { return faces[f.slot()]; }

  /// Position in doubled lattice units (exact): sites at {0,2}^4, midpoints at 1.
  Lattice4 doubled_position(int point) const {
    Lattice4 r{};
    if (is_edge_point(point)) {
      const auto& e = edges[point];
      for (int i = 0; i < 4; ++i) r[i] = 2 * e.base[i];
      r[static_cast<int>(e.axis)] += 1;
    } else if (is_face_point(point)) {
      const auto& f = faces[point - kFirstFace];
      for (int i = 0; i < 4; ++i) r[i] = 2 * f.base[i];
      r[static_cast<int>(f.axes[0])] += 1;
      r[static_cast<int>(f.axes[1])] += 1;
    } else {
      fail(ErrorKind::Usage, "not an edge or face point");
    }
    return r;
  }

  bool operator==(const CellGeometry& o) const {
    return doubled_all() == o.doubled_all();
  }

 private:
  std::vector<Lattice4> doubled_all() const {
    std::vector<Lattice4> v;
    for (int p = 0; p < kEdgeCount; ++p) v.push_back(doubled_position(p));
    for (int p = kFirstFace; p < kPointCount; ++p) v.push_back(doubled_position(p));
    return v;
  }
};

/// A known (site, axis) -> edge id assignment used to pin the labeling.
struct GeometryAnchor {
  SiteId site;
  Axis axis;
  EdgeId edge;
};

/// The boundary volumes of the toxel at site 7: 11 (+x), 9 (-y), 6 (-z), 18 (+t).
inline std::array<GeometryAnchor, 4> default_anchors() {
  return {{{SiteId(7), Axis::X, EdgeId(11)},
           {SiteId(7), Axis::Y, EdgeId(9)},
           {SiteId(7), Axis::Z, EdgeId(6)},
           {SiteId(7), Axis::T, EdgeId(18)}}};
}

namespace detail {

struct GeoEdge {
  Lattice4 base;
  int axis;
};
struct GeoFace {
  Lattice4 base;
  int a0, a1;
};

inline std::vector<GeoEdge> geometric_edges() {
  std::vector<GeoEdge> out;
  for (int s = 0; s < kSiteCount; ++s) {
    const Lattice4 p = site_coords(SiteId(s));
    for (int a = 0; a < 4; ++a) {
      if (p[a] == 0) out.push_back({p, a});
    }
  }
  return out;
}

inline std::vector<GeoFace> geometric_faces() {
  std::vector<GeoFace> out;
  for (int s = 0; s < kSiteCount; ++s) {
    const Lattice4 p = site_coords(SiteId(s));
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        if (p[a] == 0 && p[b] == 0) out.push_back({p, a, b});
      }
    }
  }
  return out;
}

inline bool geo_incident(const GeoEdge& e, const GeoFace& f) {
  if (e.axis != f.a0 && e.axis != f.a1) return false;
  const int other = e.axis == f.a0 ? f.a1 : f.a0;
  Lattice4 b = e.base;
  b[other] = 0;
  return b == f.base;
}

/// Backtracking search for incidence-preserving labelings.
class LabelingSearch {
 public:
  LabelingSearch(const PathTable& table, std::span<const GeometryAnchor> anchors)
      : edges_(geometric_edges()), faces_(geometric_faces()) {
    for (auto& row : table_inc_) row.fill(false);
    for (const auto& row : table.rows()) {
      for (const auto& p : row.paths) {
        table_inc_[row.center.slot()][p.from.slot()] = true;
        table_inc_[row.center.slot()][p.to.slot()] = true;
      }
    }
    for (int e = 0; e < kEdgeCount; ++e) {
      int n = 0;
      for (int f = 0; f < kFaceCount; ++f) n += table_inc_[e][f];
      if (n != 3) fail(ErrorKind::Format, "path table: edge " + std::to_string(e) + " does not touch 3 faces");
    }
    for (int f = 0; f < kFaceCount; ++f) {
      int n = 0;
      for (int e = 0; e < kEdgeCount; ++e) n += table_inc_[e][f];
      if (n != 4) fail(ErrorKind::Format, "path table: face " + std::to_string(f + kFirstFace) + " does not touch 4 edges");
    }
    for (std::size_t g = 0; g < edges_.size(); ++g) {
      for (std::size_t h = 0; h < faces_.size(); ++h) geo_inc_[g][h] = geo_incident(edges_[g], faces_[h]);
    }
    emap_.fill(-1);
    fmap_.fill(-1);
    for (const auto& anchor : anchors) {
      Lattice4 p = site_coords(anchor.site);
      const int a = static_cast<int>(anchor.axis);
      p[a] = 0;
      const int g = geo_edge_index(p, a);
      if (emap_[g] != -1 && emap_[g] != anchor.edge.value()) fail(ErrorKind::Format, "contradictory anchors");
      emap_[g] = anchor.edge.value();
    }
  }

  void run(std::size_t limit) {
    limit_ = limit;
    for (int g = 0; g < kEdgeCount; ++g) {
      if (emap_[g] < 0) continue;
      for (int g2 = 0; g2 < kEdgeCount; ++g2) {
        if (g2 != g && emap_[g2] == emap_[g]) fail(ErrorKind::Format, "anchors reuse an edge id");
      }
    }
    recurse();
  }

  struct Labeling {
    std::array<int, kEdgeCount> edge_of_geo;  // geometric edge -> EdgeId
    std::array<int, kFaceCount> face_of_geo;  // geometric face -> FaceId slot
  };

  const std::vector<Labeling>& solutions() const { return solutions_; }
  const std::vector<GeoEdge>& edges() const { return edges_; }
  const std::vector<GeoFace>& faces() const { return faces_; }

 private:
  int geo_edge_index(const Lattice4& base, int axis) const {
    for (std::size_t g = 0; g < edges_.size(); ++g) {
      if (edges_[g].base == base && edges_[g].axis == axis) return static_cast<int>(g);
    }
    fail(ErrorKind::Internal, "no such geometric edge");
  }

  bool edge_consistent(int g, int E) const {
    for (int h = 0; h < kFaceCount; ++h) {
      if (fmap_[h] >= 0 && geo_inc_[g][h] != table_inc_[E][fmap_[h]]) return false;
    }
    return true;
  }

  bool face_consistent(int h, int F) const {
    for (int g = 0; g < kEdgeCount; ++g) {
      if (emap_[g] >= 0 && geo_inc_[g][h] != table_inc_[emap_[g]][F]) return false;
    }
    return true;
  }

  void recurse() {
    if (solutions_.size() >= limit_) return;
    std::array<bool, kEdgeCount> used_e{};
    std::array<bool, kFaceCount> used_f{};
    for (int g = 0; g < kEdgeCount; ++g) if (emap_[g] >= 0) used_e[emap_[g]] = true;
    for (int h = 0; h < kFaceCount; ++h) if (fmap_[h] >= 0) used_f[fmap_[h]] = true;

    // Unlabeled face next to a labeled edge: its id is one of that edge's 3 faces.
    for (int g = 0; g < kEdgeCount; ++g) {
      if (emap_[g] < 0) continue;
      for (int h = 0; h < kFaceCount; ++h) {
        if (!geo_inc_[g][h] || fmap_[h] >= 0) continue;
        for (int F = 0; F < kFaceCount; ++F) {
          if (used_f[F] || !table_inc_[emap_[g]][F] || !face_consistent(h, F)) continue;
          fmap_[h] = F;
          recurse();
          fmap_[h] = -1;
        }
        return;
      }
    }
    // Otherwise the unlabeled edge touching the most labeled faces.
    int best = -1, best_k = 0;
    for (int g = 0; g < kEdgeCount; ++g) {
      if (emap_[g] >= 0) continue;
      int k = 0;
      for (int h = 0; h < kFaceCount; ++h) k += geo_inc_[g][h] && fmap_[h] >= 0;
      if (k > best_k) best = g, best_k = k;
    }
    if (best >= 0) {
      for (int E = 0; E < kEdgeCount; ++E) {
        if (used_e[E] || !edge_consistent(best, E)) continue;
        emap_[best] = E;
        recurse();
        emap_[best] = -1;
      }
      return;
    }
    const bool complete = std::none_of(emap_.begin(), emap_.end(), [](int v) { return v < 0; }) &&
                          std::none_of(fmap_.begin(), fmap_.end(), [](int v) { return v < 0; });
    if (complete) {
      solutions_.push_back({emap_, fmap_});
      return;
    }
    // Disconnected from every anchor: branch on the first free edge.
    for (int g = 0; g < kEdgeCount; ++g) {
      if (emap_[g] >= 0) continue;
      for (int E = 0; E < kEdgeCount; ++E) {
        if (used_e[E] || !edge_consistent(g, E)) continue;
        emap_[g] = E;
        recurse();
        emap_[g] = -1;
      }
      return;
    }
  }

  std::vector<GeoEdge> edges_;
  std::vector<GeoFace> faces_;
  std::array<std::array<bool, kFaceCount>, kEdgeCount> table_inc_{};
  std::array<std::array<bool, kFaceCount>, kEdgeCount> geo_inc_{};
  std::array<int, kEdgeCount> emap_{};
  std::array<int, kFaceCount> fmap_{};
  std::vector<Labeling> solutions_;
  std::size_t limit_ = 2;
};

inline int permutation_sign(std::array<int, 4> p) {
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace detail

/// Recovers the point-id layout of the 4-cell from the edge/face incidence in
/// `table`, pinned by `anchors`. Fails with ErrorKind::Format when no labeling
/// or more than one labeling is consistent.
inline CellGeometry reconstruct_geometry(const PathTable& table,
                                         std::span<const GeometryAnchor> anchors) {
  detail::LabelingSearch search(table, anchors);
  search.run(16);
  const auto& sols = search.solutions();
  if (sols.empty()) fail(ErrorKind::Format, "no cell labeling is consistent with the path table");
  if (sols.size() > 1) {
    std::ostringstream msg;
    msg << sols.size() << (sols.size() >= 16 ? "+" : "")
        << " labelings are consistent with the path table and anchors; edge ids of the first two differ at";
    for (int g = 0; g < kEdgeCount; ++g) {
      if (sols[0].edge_of_geo[g] != sols[1].edge_of_geo[g]) msg << ' ' << sols[0].edge_of_geo[g];
    }
    fail(ErrorKind::Format, msg.str());
  }
  const auto& sol = sols.front();
  CellGeometry geo;
  for (int s = 0; s < kSiteCount; ++s) geo.site_pos[s] = site_coords(SiteId(s));
  for (int g = 0; g < kEdgeCount; ++g) {
    const auto& ge = search.edges()[g];
    auto& e = geo.edges[sol.edge_of_geo[g]];
    e.base = ge.base;
    e.axis = static_cast<Axis>(ge.axis);
    Lattice4 up = ge.base;
    up[ge.axis] = 1;
    e.sites = {site_at(ge.base).value(), site_at(up).value()};
    geo.site_edge[e.sites[0]][ge.axis] = sol.edge_of_geo[g];
    geo.site_edge[e.sites[1]][ge.axis] = sol.edge_of_geo[g];
  }
  for (int h = 0; h < kFaceCount; ++h) {
    const auto& gf = search.faces()[h];
    auto& f = geo.faces[sol.face_of_geo[h]];
    f.base = gf.base;
    f.axes = {static_cast<Axis>(gf.a0), static_cast<Axis>(gf.a1)};
    Lattice4 c1 = gf.base, c2 = gf.base, c3 = gf.base;
    c1[gf.a0] = 1;
    c2[gf.a0] = 1;
    c2[gf.a1] = 1;
    c3[gf.a1] = 1;
    f.corners = {site_at(gf.base).value(), site_at(c1).value(), site_at(c2).value(),
                 site_at(c3).value()};
    // Edges in the same cyclic order: base-c1, c1-c2, c3-c2, base-c3.
    f.edges = {geo.site_edge[f.corners[0]][gf.a0], geo.site_edge[f.corners[1]][gf.a1],
               geo.site_edge[f.corners[3]][gf.a0], geo.site_edge[f.corners[0]][gf.a1]};
  }
  for (int e = 0; e < kEdgeCount; ++e) {
    auto& edge = geo.edges[e];
    int k = 0;
    for (int other = 0; other < 4; ++other) {
      if (other == static_cast<int>(edge.axis)) continue;
      for (int f = 0; f < kFaceCount; ++f) {
        const auto& face = geo.faces[f];
        const bool spans = (static_cast<int>(face.axes[0]) == other ||
                            static_cast<int>(face.axes[1]) == other);
        if (spans && std::find(face.edges.begin(), face.edges.end(), e) != face.edges.end()) {
          edge.faces[k++] = f + kFirstFace;
        }
      }
    }
    check_internal(k == 3, "edge without 3 incident faces");
  }
  return geo;
}

inline CellGeometry reconstruct_geometry(const PathTable& table) {
  const auto anchors = default_anchors();
  return reconstruct_geometry(table, anchors);
}

/// Handedness of the path orientation. Together with the side factors below it
/// yields boundary elements whose normal points towards the enclosed toxel on
/// the lower bounding cube and away from it on the upper one.
inline constexpr int kPathHandedness = +1;

/// Builds every octant path triplet from the cell geometry alone.
///
/// For an edge along axis a with base b, the face spanned by {a, x} has its
/// center offset by s_x = (b_x == 0 ? +1 : -1) along x. A PLUS octant contains
/// the path F_x -> e -> F_y iff s_x s_y s_z sign(a, x, y, z) == kPathHandedness,
/// where z is the remaining axis. MINUS triplets are the arrow-reversed PLUS
/// triplets. Rows start after the face whose second axis is the largest.
inline PathTable generate_table(const CellGeometry& geo) {
  PathTable t;
  for (int e = 0; e < kEdgeCount; ++e) {
    const auto& edge = geo.edges[e];
    const int a = static_cast<int>(edge.axis);
    std::array<int, 3> others{};
    for (int i = 0, k = 0; i < 4; ++i) {
      if (i != a) others[k++] = i;
    }
    auto face_for = [&](int axis) {
      for (int f : edge.faces) {
        const auto& face = geo.faces[f - kFirstFace];
        if (static_cast<int>(face.axes[0]) == axis || static_cast<int>(face.axes[1]) == axis) return f;
      }
      fail(ErrorKind::Internal, "edge lacks a face along axis");
    };
    auto side = [&](int axis) { return edge.base[axis] == 0 ? 1 : -1; };
    std::array<int, 4> succ{-1, -1, -1, -1};
    for (int x : others) {
      for (int y : others) {
        if (x == y) continue;
        int z = -1;
        for (int w : others) if (w != x && w != y) z = w;
        const int s = side(x) * side(y) * side(z) * detail::permutation_sign({a, x, y, z});
        if (s == kPathHandedness) succ[x] = y;
      }
    }
    const int third = others[2];
    const int first = succ[third];
    const int second = succ[first];
    check_internal(first >= 0 && second >= 0 && succ[second] == third, "octant faces do not form a 3-cycle");
    const FaceId f1(face_for(first)), f2(face_for(second)), f3(face_for(third));
    const EdgeId c(e);
    t.at(c, Orientation::Plus) = {c, Orientation::Plus, {{{f1, c, f2}, {f2, c, f3}, {f3, c, f1}}}};
    t.at(c, Orientation::Minus) = {c, Orientation::Minus, {{{f2, c, f1}, {f1, c, f3}, {f3, c, f2}}}};
  }
  return t;
}

/// Everything the extractor needs about the 4-cell, built once and shared.
struct Topology {
  PathTable table;
  CellGeometry geometry;
};

/// Reconstructs the geometry from the transcribed table and checks that the
/// generated table reproduces the transcription exactly.
inline const Topology& topology() {
  static const Topology topo = [] {
    Topology t;
    t.table = PathTable::transcribed();
    t.geometry = reconstruct_geometry(t.table);
    check_internal(generate_table(t.geometry) == t.table,
                   "generated path table differs from the transcription");
    return t;
  }();
  return topo;
}

/// The edge center between `site` and its neighbor along `axis`; PLUS when
/// that neighbor lies in the positive direction.
inline std::pair<EdgeId, Orientation> site_boundary(SiteId site, Axis axis) {
  const auto& geo = topology().geometry;
  const int a = static_cast<int>(axis);
  const Orientation o = geo.site_pos[site.value()][a] == 0 ? Orientation::Plus : Orientation::Minus;
  return {EdgeId(geo.site_edge[site.value()][a]), o};
}

inline const PathTriplet& octant_paths(EdgeId center, Orientation o) {
  return topology().table.at(center, o);
}

/// Corner sites of a face, in cyclic order around it.
inline std::array<SiteId, 4> face_corners(FaceId f) {
  const auto& c = topology().geometry.face(f).corners;
  return {SiteId(c[0]), SiteId(c[1]), SiteId(c[2]), SiteId(c[3])};
}

}  // namespace steve
