#pragma once

// Support-point placement, decomposition of sections into oriented tetrahedra,
// assembly of the global 4D tet mesh, and closedness validation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "steve/error.hpp"
#include "steve/extraction.hpp"
#include "steve/field.hpp"
#include "steve/parallel.hpp"
#include "steve/topology.hpp"
#include "steve/vec.hpp"

namespace steve {

enum class VertexKind : std::uint8_t { None, EdgeSupport, FaceCentroid, VolumeCenter };

/// Canonical identity of a mesh vertex.
///   EdgeSupport:  {lower toxel index * 4 + axis + 1} in the padded grid
///   FaceCentroid: sorted EdgeSupport ids of the cycle
///   VolumeCenter: {cell index, section ordinal}
struct VertexKey {
  VertexKind kind = VertexKind::None;
  std::vector<std::uint64_t> ids;

  bool operator==(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(k.kind) + 1);
    for (std::uint64_t id : k.ids) {
      h ^= id + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

struct Vertex4 {
  VertexKey key;
  Vec4 pos{};
  std::vector<double> attrs;  // parallel to TetMesh4::attr_names
};

struct Provenance {
  std::uint64_t cell = 0;
  std::uint32_t section = 0;
};

struct Tet4 {
  std::array<std::uint32_t, 4> v{};
  Vec4 normal{};  // unit outward 4-normal; zero when the tet is degenerate
  Provenance origin;
};

struct TetMesh4 {
  std::vector<std::string> attr_names;
  std::vector<Vertex4> vertices;
  std::vector<Tet4> tets;

  std::array<Vec4, 4> corners(const Tet4& t) const {
    return {vertices[t.v[0]].pos, vertices[t.v[1]].pos, vertices[t.v[2]].pos, vertices[t.v[3]].pos};
  }
};

// ---------------------------------------------------------------------------
// Support points

/// Position of the support point along the range vector, as a fraction from
/// the active toxel towards the inactive one.
inline double support_lambda(double f_active, double f_inactive, double isovalue, Placement placement,
                             double clamp = 1e-3, bool ghost = false) {
  if (placement == Placement::Midpoint || ghost) return 0.5;
  if (f_inactive == f_active) return 0.5;
  const double lambda = (isovalue - f_active) / (f_inactive - f_active);
  return std::clamp(lambda, clamp, 1.0 - clamp);
}

struct SupportPoint {
  double lambda = 0.5;
  Vec4 pos{};
};

inline SupportPoint support_point(const Vec4& active_pos, const Vec4& inactive_pos, double f_active,
                                  double f_inactive, double isovalue, Placement placement,
                                  double clamp = 1e-3, bool ghost = false) {
  const double l = support_lambda(f_active, f_inactive, isovalue, placement, clamp, ghost);
  return {l, lerp(active_pos, inactive_pos, l)};
}

// ---------------------------------------------------------------------------
// Normals

/// Unnormalized 4-normal of the tet (v0, v1, v2, v3); its length is six times
/// the tet's 3-volume.
inline Vec4 raw_normal(const std::array<Vec4, 4>& p) {
  return cross4(p[1] - p[0], p[2] - p[0], p[3] - p[0]);
}

inline double tet_volume(const std::array<Vec4, 4>& p) { return norm(raw_normal(p)) / 6.0; }

inline Vec4 four_normal(const std::array<Vec4, 4>& p) {
  const Vec4 n = raw_normal(p);
  const double len = norm(n);
  if (!(len > 0.0)) fail(ErrorKind::Validation, "4-normal of a degenerate tetrahedron");
  return (1.0 / len) * n;
}

// ---------------------------------------------------------------------------
// Decomposition

/// A point of a decomposed section: a support point (edge), the center of one
/// of the section's cycles, or the section's volume center.
struct SectionPoint {
  VertexKind kind = VertexKind::EdgeSupport;
  int edge = -1;   // EdgeSupport
  int cycle = -1;  // FaceCentroid: index into Section::cycles
};

struct SectionTets {
  std::vector<SectionPoint> points;
  std::vector<std::array<int, 4>> tets;  // indices into points
};

namespace detail {

/// The tet built on triangle a -> b -> c with apex x. Cycles run clockwise
/// seen from outside, so the stored order (x, a, c, b) is the one whose cross4
/// points away from the enclosed region (checked on an isolated toxel in the tests).
inline std::array<int, 4> oriented_tet(int apex, int a, int b, int c) { return {apex, a, c, b}; }

}  // namespace detail

/// Splits a section into oriented tetrahedra. A section of exactly four
/// 3-cycles is already a tetrahedron; otherwise every N-cycle (N >= 4) is fanned
/// around its center, 3-cycles stay whole, and each triangle is coned to the
/// volume center.
inline SectionTets decompose(const Section& section) {
  SectionTets out;
  std::array<int, kEdgeCount> point_of_edge;
  point_of_edge.fill(-1);
  auto support = [&](int e) {
    if (point_of_edge[e] < 0) {
      point_of_edge[e] = static_cast<int>(out.points.size());
      out.points.push_back({VertexKind::EdgeSupport, e, -1});
    }
    return point_of_edge[e];
  };

  const auto& cycles = section.cycles;
  const bool single = cycles.size() == 4 && std::all_of(cycles.begin(), cycles.end(),
                                                        [](const ReducedCycle& c) { return c.size() == 3; });
  if (single) {
    const auto& c0 = cycles[0];
    const int a = support(c0[0]), b = support(c0[1]), c = support(c0[2]);
    int apex = -1;
    for (const auto& cy : cycles) {
      for (int e : cy.edges) {
        if (e != c0[0] && e != c0[1] && e != c0[2]) {
          check_internal(apex < 0 || out.points[apex].edge == e, "tetrahedral section with more than 4 points");
          apex = support(e);
        }
      }
    }
    check_internal(apex >= 0, "tetrahedral section with fewer than 4 points");
    out.tets.push_back(detail::oriented_tet(apex, a, b, c));
    return out;
  }

  for (const auto& cy : cycles) {
    for (int e : cy.edges) support(e);
  }
  const int volume = static_cast<int>(out.points.size());
  out.points.push_back({VertexKind::VolumeCenter, -1, -1});
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    const auto& cy = cycles[ci];
    if (cy.size() == 3) {
      out.tets.push_back(detail::oriented_tet(volume, point_of_edge[cy[0]], point_of_edge[cy[1]],
                                              point_of_edge[cy[2]]));
      continue;
    }
    const int center = static_cast<int>(out.points.size());
    out.points.push_back({VertexKind::FaceCentroid, -1, static_cast<int>(ci)});
    for (std::size_t k = 0; k < cy.size(); ++k) {
      out.tets.push_back(
          detail::oriented_tet(volume, center, point_of_edge[cy[k]], point_of_edge[cy.next(k)]));
    }
  }
  return out;
}

/// Expected tet count of a section: 1 for a bare tetrahedron, else the number
/// of 3-cycles plus the summed lengths of the longer cycles.
inline std::size_t expected_tet_count(const Section& s) {
  std::size_t n = 0;
  bool all3 = s.cycles.size() == 4;
  for (const auto& c : s.cycles) {
    n += c.size() == 3 ? 1 : c.size();
    all3 = all3 && c.size() == 3;
  }
  return all3 ? 1 : n;
}

// ---------------------------------------------------------------------------
// Extraction pipeline

namespace detail {

/// Cache key: activity bits plus the CONNECT decision of every point of
/// ambiguity. Cycles depend on nothing else.
inline std::uint64_t decision_key(const CellPattern& p, const ExtractionConfig& cfg) {
  return static_cast<std::uint64_t>(p.bits) | static_cast<std::uint64_t>(connect_decisions(p, cfg)) << 16;
}

struct CachedSection {
  Section section;
  SectionTets tets;
};

inline const std::vector<CachedSection>& cached_sections(const CellPattern& p, const ExtractionConfig& cfg) {
  thread_local std::unordered_map<std::uint64_t, std::vector<CachedSection>> cache;
  const std::uint64_t key = decision_key(p, cfg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() > (1u << 18)) cache.clear();
  std::vector<CachedSection> entry;
  for (auto& s : extract_cell(p, cfg)) {
    SectionTets t = decompose(s);
    entry.push_back({std::move(s), std::move(t)});
  }
  return cache.emplace(key, std::move(entry)).first->second;
}

/// Vertices and tets of a run of cells, with chunk-local vertex indices.
struct ChunkMesh {
  std::vector<Vertex4> vertices;
  std::vector<Tet4> tets;
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> index;

  std::uint32_t add(VertexKey key, const Vec4& pos, std::vector<double> attrs) {
    auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(vertices.size()));
    if (inserted) {
      vertices.push_back({std::move(key), pos, std::move(attrs)});
    } else if (vertices[it->second].pos != pos) {
      fail(ErrorKind::Internal, "vertex key produced with two different positions");
    }
    return it->second;
  }
};

class CellTessellator {
 public:
  CellTessellator(const ToxelField& padded, const ToxelField& original, const ExtractionConfig& cfg)
      : field_(padded), cfg_(cfg), origin_(original.origin()), spacing_(original.spacing()),
        names_(padded.aux_names()) {
    double h = 1.0;
    for (double s : spacing_) h *= s;
    h = std::pow(h, 0.25);
    min_normal_ = 6.0 * 1e-10 * h * h * h;
  }

  void run(const CellRef& cell, ChunkMesh& out) const {
    const auto& sections = cached_sections(cell.pattern, cfg_);
    const auto& geo = topology().geometry;
    for (std::size_t k = 0; k < sections.size(); ++k) {
      const Section& section = sections[k].section;
      const SectionTets& st = sections[k].tets;

      // Support points of the cell, keyed by global grid edge.
      std::array<std::uint64_t, kEdgeCount> edge_key{};
      std::array<Vec4, kEdgeCount> edge_pos{};
      std::array<std::vector<double>, kEdgeCount> edge_attr;
      std::vector<std::uint32_t> ids(st.points.size());
      for (std::size_t i = 0; i < st.points.size(); ++i) {
        if (st.points[i].kind != VertexKind::EdgeSupport) continue;
        const int e = st.points[i].edge;
        support(cell, geo.edges[e], edge_key[e], edge_pos[e], edge_attr[e]);
        ids[i] = out.add({VertexKind::EdgeSupport, {edge_key[e]}}, edge_pos[e], edge_attr[e]);
      }

      // Centers of all cycles (3-cycles only feed the volume center).
      const std::size_t nc = section.cycles.size();
      std::vector<Vec4> face_pos(nc);
      std::vector<std::vector<double>> face_attr(nc);
      std::vector<std::vector<std::uint64_t>> face_keys(nc);
      for (std::size_t ci = 0; ci < nc; ++ci) {
        const auto& cy = section.cycles[ci];
        std::vector<std::pair<std::uint64_t, int>> members;
        for (int e : cy.edges) {
          if (edge_key[e] == 0) support(cell, geo.edges[e], edge_key[e], edge_pos[e], edge_attr[e]);
          members.emplace_back(edge_key[e], e);
        }
        std::sort(members.begin(), members.end());
        Vec4 sum{};
        std::vector<double> asum(names_.size(), 0.0);
        for (const auto& [key, e] : members) {
          sum = sum + edge_pos[e];
          for (std::size_t a = 0; a < asum.size(); ++a) asum[a] += edge_attr[e][a];
          face_keys[ci].push_back(key);
        }
        const double inv = 1.0 / static_cast<double>(members.size());
        face_pos[ci] = inv * sum;
        for (double& v : asum) v *= inv;
        face_attr[ci] = std::move(asum);
      }

      for (std::size_t i = 0; i < st.points.size(); ++i) {
        const SectionPoint& p = st.points[i];
        if (p.kind == VertexKind::FaceCentroid) {
          ids[i] = out.add({VertexKind::FaceCentroid, face_keys[p.cycle]}, face_pos[p.cycle], face_attr[p.cycle]);
        } else if (p.kind == VertexKind::VolumeCenter) {
          Vec4 sum{};
          std::vector<double> asum(names_.size(), 0.0);
          for (std::size_t ci = 0; ci < nc; ++ci) {
            sum = sum + face_pos[ci];
            for (std::size_t a = 0; a < asum.size(); ++a) asum[a] += face_attr[ci][a];
          }
          const double inv = 1.0 / static_cast<double>(nc);
          for (double& v : asum) v *= inv;
          ids[i] = out.add({VertexKind::VolumeCenter, {cell.index, k}}, inv * sum, std::move(asum));
        }
      }

      for (const auto& t : st.tets) {
        Tet4 tet;
        for (int j = 0; j < 4; ++j) tet.v[j] = ids[t[j]];
        const std::array<Vec4, 4> p{out.vertices[tet.v[0]].pos, out.vertices[tet.v[1]].pos,
                                    out.vertices[tet.v[2]].pos, out.vertices[tet.v[3]].pos};
        const Vec4 n = raw_normal(p);
        const double len = norm(n);
        if (len > min_normal_) tet.normal = (1.0 / len) * n;
        tet.origin = {cell.index, static_cast<std::uint32_t>(k)};
        out.tets.push_back(tet);
      }
    }
  }

 private:
  Vec4 world(const Lattice4& padded) const {
    // Positions use the unpadded frame so that integer grids stay exact.
    return {origin_[0] + (padded[0] - 1) * spacing_[0], origin_[1] + (padded[1] - 1) * spacing_[1],
            origin_[2] + (padded[2] - 1) * spacing_[2], origin_[3] + (padded[3] - 1) * spacing_[3]};
  }

  void support(const CellRef& cell, const CellGeometry::Edge& edge, std::uint64_t& key, Vec4& pos,
               std::vector<double>& attrs) const {
    const int lo = edge.sites[0], hi = edge.sites[1];
    const bool lo_active = cell.pattern.active(lo);
    const int a = lo_active ? lo : hi, i = lo_active ? hi : lo;
    const auto& off = site_offsets();
    Lattice4 pa{}, pi{}, plo{};
    for (int d = 0; d < 4; ++d) {
      pa[d] = cell.base[d] + off[a][d];
      pi[d] = cell.base[d] + off[i][d];
      plo[d] = cell.base[d] + edge.base[d];
    }
    key = static_cast<std::uint64_t>(field_.index(plo)) * 4 + static_cast<std::uint64_t>(edge.axis) + 1;
    const bool ghost = cell.pattern.ghost(i);
    const double l = support_lambda(cell.pattern.values[a], cell.pattern.values[i], cfg_.isovalue,
                                    cfg_.placement, cfg_.clamp, ghost);
    pos = lerp(world(pa), world(pi), l);
    attrs.assign(names_.size(), 0.0);
    const std::size_t ia = field_.index(pa), ii = field_.index(pi);
    for (std::size_t c = 0; c < names_.size(); ++c) {
      const auto ch = field_.aux(names_[c]);
      attrs[c] = ch[ia] + l * (ch[ii] - ch[ia]);
    }
  }

  const ToxelField& field_;
  ExtractionConfig cfg_;
  Vec4 origin_;
  Vec4 spacing_;
  std::vector<std::string> names_;
  double min_normal_ = 0.0;
};

}  // namespace detail

/// Cells per work unit. Fixed, so that chunk boundaries (and hence the merge
/// order) never depend on the number of workers.
inline constexpr std::size_t kCellsPerChunk = 2048;

/// Deduplicates chunk meshes into one mesh, visiting chunks in order.
inline TetMesh4 assemble(std::vector<detail::ChunkMesh>&& chunks, std::vector<std::string> attr_names) {
  TetMesh4 mesh;
  mesh.attr_names = std::move(attr_names);
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> index;
  for (auto& chunk : chunks) {
    std::vector<std::uint32_t> remap(chunk.vertices.size());
    for (std::size_t i = 0; i < chunk.vertices.size(); ++i) {
      Vertex4& v = chunk.vertices[i];
      auto [it, inserted] = index.try_emplace(v.key, static_cast<std::uint32_t>(mesh.vertices.size()));
      if (inserted) {
        mesh.vertices.push_back(std::move(v));
      } else if (mesh.vertices[it->second].pos != v.pos || mesh.vertices[it->second].attrs != v.attrs) {
        fail(ErrorKind::Internal, "vertex key produced with two different positions");
      }
      remap[i] = it->second;
    }
    for (Tet4 t : chunk.tets) {
      for (auto& v : t.v) v = remap[v];
      mesh.tets.push_back(t);
    }
    chunk = {};
  }
  return mesh;
}

/// Full pipeline: pad with ghosts, extract every non-trivial cell, decompose
/// sections and merge into one closed, oriented tet mesh.
inline TetMesh4 extract_hypersurface(const ToxelField& field, const ExtractionConfig& cfg) {
  if (!(cfg.clamp > 0.0 && cfg.clamp < 0.5)) fail(ErrorKind::Usage, "clamp must lie in (0, 0.5)");
  if (!std::isfinite(cfg.isovalue)) fail(ErrorKind::NonFinite, "isovalue must be finite");
  const ToxelField padded = pad_ghost(field);
  const std::size_t n_cells = CellRange::cell_count(padded);
  const std::size_t n_chunks = (n_cells + kCellsPerChunk - 1) / kCellsPerChunk;
  const detail::CellTessellator tess(padded, field, cfg);
  auto chunks = parallel_chunks(n_chunks, resolve_workers(cfg.workers), [&](std::size_t c) {
    detail::ChunkMesh out;
    const CellRange range(padded, cfg.isovalue, cfg.strict, c * kCellsPerChunk, (c + 1) * kCellsPerChunk);
    for (const CellRef& cell : range) tess.run(cell, out);
    out.index.clear();
    return out;
  });
  return assemble(std::move(chunks), padded.aux_names());
}

// ---------------------------------------------------------------------------
// Validation

using Triangle = std::array<std::uint32_t, 3>;

struct ComponentStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;
  std::size_t tets = 0;
  long long euler() const {
    return static_cast<long long>(vertices) - static_cast<long long>(edges) +
           static_cast<long long>(triangles) - static_cast<long long>(tets);
  }
};

struct ValidationReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;
  std::size_t tets = 0;
  std::vector<Triangle> boundary;       // triangles used by a single tet
  std::vector<Triangle> overshared;     // triangles used by more than two tets
  std::vector<Triangle> misoriented;    // shared triangles traversed the same way twice
  std::vector<std::size_t> degenerate;  // tet indices below the volume tolerance
  std::vector<std::size_t> bad_indices; // tets referencing missing or repeated vertices
  std::vector<ComponentStats> components;

  bool closed() const { return boundary.empty() && overshared.empty() && bad_indices.empty(); }
  bool oriented() const { return misoriented.empty(); }
  bool euler_ok() const {
    return std::all_of(components.begin(), components.end(),
                       [](const ComponentStats& c) { return c.euler() == 0; });
  }
  /// Closed, consistently oriented and free of degenerate tets. The Euler
  /// characteristic is reported separately: a section whose boundary is a
  /// torus is coned to a single center, which leaves a pinch point there.
  bool ok() const { return closed() && oriented() && degenerate.empty(); }

  long long euler() const {
    return static_cast<long long>(vertices) - static_cast<long long>(edges) +
           static_cast<long long>(triangles) - static_cast<long long>(tets);
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> f;
    if (!bad_indices.empty()) f.push_back(std::to_string(bad_indices.size()) + " tets with invalid vertex indices");
    if (!boundary.empty()) f.push_back(std::to_string(boundary.size()) + " boundary triangles");
    if (!overshared.empty()) f.push_back(std::to_string(overshared.size()) + " triangles shared by more than two tets");
    if (!misoriented.empty()) f.push_back(std::to_string(misoriented.size()) + " inconsistently oriented triangles");
    if (!degenerate.empty()) f.push_back(std::to_string(degenerate.size()) + " degenerate tets");
    return f;
  }

  /// Components whose Euler characteristic is not that of a closed 3-manifold.
  std::vector<std::string> notes() const {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (components[i].euler() != 0) {
        n.push_back("component " + std::to_string(i) + " has Euler characteristic " +
                    std::to_string(components[i].euler()));
      }
    }
    return n;
  }
};

/// Oriented facets of a tet: each is traversed so that the facets agree
/// with the tet's orientation.
inline std::array<Triangle, 4> tet_facets(const std::array<std::uint32_t, 4>& v) {
  return {Triangle{v[1], v[2], v[3]}, Triangle{v[0], v[3], v[2]}, Triangle{v[0], v[1], v[3]},
          Triangle{v[0], v[2], v[1]}};
}

/// Sorts a triangle, returning the parity of the permutation (0 even, 1 odd).
inline int canonical_triangle(Triangle& t) {
  int parity = 0;
  if (t[0] > t[1]) { std::swap(t[0], t[1]); parity ^= 1; }
  if (t[1] > t[2]) { std::swap(t[1], t[2]); parity ^= 1; }
  if (t[0] > t[1]) { std::swap(t[0], t[1]); parity ^= 1; }
  return parity;
}

/// Checks closedness, consistent orientation, non-degeneracy and per-component
/// Euler characteristic. Never throws on a malformed mesh.
inline ValidationReport validate(const TetMesh4& mesh, double volume_tolerance = 1e-10) {
  ValidationReport r;
  r.tets = mesh.tets.size();
  const std::size_t nv = mesh.vertices.size();

  struct Facet {
    Triangle tri;
    std::uint32_t tet;
    int parity;
    std::uint64_t hi() const { return static_cast<std::uint64_t>(tri[0]) << 32 | tri[1]; }
    std::uint64_t lo() const { return static_cast<std::uint64_t>(tri[2]) << 32 | tet; }
  };
  std::vector<Facet> facets;
  facets.reserve(4 * mesh.tets.size());
  std::vector<bool> usable(mesh.tets.size(), true);
  for (std::size_t ti = 0; ti < mesh.tets.size(); ++ti) {
    const auto& v = mesh.tets[ti].v;
    bool ok = true;
    for (int a = 0; a < 4; ++a) {
      if (v[a] >= nv) ok = false;
      for (int b = 0; b < a; ++b) ok = ok && v[a] != v[b];
    }
    if (!ok) {
      r.bad_indices.push_back(ti);
      usable[ti] = false;
      continue;
    }
    if (tet_volume(mesh.corners(mesh.tets[ti])) <= volume_tolerance) r.degenerate.push_back(ti);
    for (Triangle t : tet_facets(v)) {
      const int parity = canonical_triangle(t);
      facets.push_back({t, static_cast<std::uint32_t>(ti), parity});
    }
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
    return a.hi() != b.hi() ? a.hi() < b.hi() : a.lo() < b.lo();
  });

  // Components: tets joined through shared triangles.
  std::vector<int> parent(mesh.tets.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int a, int b) { parent[detail::find_root(parent, a)] = detail::find_root(parent, b); };

  for (std::size_t i = 0; i < facets.size();) {
    std::size_t j = i;
    while (j < facets.size() && facets[j].tri == facets[i].tri) ++j;
    ++r.triangles;
    const std::size_t count = j - i;
    if (count == 1) {
      r.boundary.push_back(facets[i].tri);
    } else if (count > 2) {
      r.overshared.push_back(facets[i].tri);
    } else if (facets[i].parity == facets[i + 1].parity) {
      r.misoriented.push_back(facets[i].tri);
    }
    for (std::size_t k = i + 1; k < j; ++k) unite(static_cast<int>(facets[i].tet), static_cast<int>(facets[k].tet));
    i = j;
  }

  // Distinct vertices and edges, globally and per component.
  std::map<int, std::size_t> comp_of_root;
  std::vector<int> comp(mesh.tets.size(), -1);
  for (std::size_t ti = 0; ti < mesh.tets.size(); ++ti) {
    if (!usable[ti]) continue;
    const int root = detail::find_root(parent, static_cast<int>(ti));
    auto [it, inserted] = comp_of_root.try_emplace(root, r.components.size());
    if (inserted) r.components.emplace_back();
    comp[ti] = static_cast<int>(it->second);
    ++r.components[it->second].tets;
  }
  for (std::size_t i = 0; i < facets.size();) {
    std::size_t j = i;
    while (j < facets.size() && facets[j].tri == facets[i].tri) ++j;
    ++r.components[comp[facets[i].tet]].triangles;
    i = j;
  }
  std::vector<std::uint64_t> edges, verts;
  edges.reserve(6 * mesh.tets.size());
  verts.reserve(4 * mesh.tets.size());
  for (std::size_t ti = 0; ti < mesh.tets.size(); ++ti) {
    if (!usable[ti]) continue;
    const auto& v = mesh.tets[ti].v;
    for (int a = 0; a < 4; ++a) {
      verts.push_back(static_cast<std::uint64_t>(v[a]) << 32 | static_cast<std::uint32_t>(comp[ti]));
      for (int b = a + 1; b < 4; ++b) {
        const auto [lo, hi] = std::minmax(v[a], v[b]);
        edges.push_back(static_cast<std::uint64_t>(lo) << 32 | hi);
      }
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    ++r.components[verts[i] & 0xFFFFFFFFu].vertices;
    if (i == 0 || (verts[i] >> 32) != (verts[i - 1] >> 32)) ++r.vertices;
  }
  // Tets sharing an edge may belong to different components (pinches), so
  // edges are attributed through each tet that uses them.
  std::vector<std::pair<std::uint64_t, int>> comp_edges;
  comp_edges.reserve(edges.size());
  for (std::size_t ti = 0, k = 0; ti < mesh.tets.size(); ++ti) {
    if (!usable[ti]) continue;
    for (int e = 0; e < 6; ++e) comp_edges.emplace_back(edges[k++], comp[ti]);
  }
  std::sort(comp_edges.begin(), comp_edges.end());
  comp_edges.erase(std::unique(comp_edges.begin(), comp_edges.end()), comp_edges.end());
  for (std::size_t i = 0; i < comp_edges.size(); ++i) {
    ++r.components[comp_edges[i].second].edges;
    if (i == 0 || comp_edges[i].first != comp_edges[i - 1].first) ++r.edges;
  }
  return r;
}

}  // namespace steve
