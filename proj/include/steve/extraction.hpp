#pragma once

// Per-cell protomesh construction: octant emission, connectivity resolution at
// face centers, stitching into cyclic vector paths, reduction to support-point
// cycles and grouping into closed polyhedral sections.

#include <algorithm>
#include <map>
#include <random>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "steve/error.hpp"
#include "steve/field.hpp"
#include "steve/topology.hpp"

namespace steve {

/// One directed vector of an octant path: face -> edge center or edge center -> face.
struct Segment {
  int from = 0;
  int to = 0;
  EdgeId center;
  Orientation orientation = Orientation::Plus;
  std::uint8_t active_site = 0;    // toxel the octant belongs to
  std::uint8_t inactive_site = 0;  // toxel the range vector points at

  bool into_center() const { return is_face_point(from); }
};

/// Point ids of a cyclic vector path, alternating face and edge, starting at a face.
using InitialCycle = std::vector<int>;

/// Cyclic sequence of support points (edge ids).
struct ReducedCycle {
  std::vector<int> edges;

  std::size_t size() const { return edges.size(); }
  int operator[](std::size_t i) const { return edges[i]; }
  int next(std::size_t i) const { return edges[(i + 1) % edges.size()]; }
  bool operator==(const ReducedCycle&) const = default;
};

/// A closed oriented polyhedron within one cell.
struct Section {
  std::vector<ReducedCycle> cycles;
  std::size_t cell = 0;

  int min_edge() const {
    int m = kEdgeCount;
    for (const auto& c : cycles) {
      for (int e : c.edges) m = std::min(m, e);
    }
    return m;
  }
};

/// Octant paths for every active -> inactive transition of the cell, as segments.
/// Sites are visited in id order and axes x, y, z, t; each octant contributes its
/// three paths as consecutive (face -> center, center -> face) segment pairs.
inline std::vector<Segment> emit_octants(const CellPattern& pattern) {
  const auto& topo = topology();
  std::vector<Segment> segs;
  segs.reserve(96);
  for (int v = 0; v < kSiteCount; ++v) {
    if (!pattern.active(v)) continue;
    for (int a = 0; a < kAxisCount; ++a) {
      const int e = topo.geometry.site_edge[v][a];
      const auto& edge = topo.geometry.edges[e];
      const int w = edge.sites[0] == v ? edge.sites[1] : edge.sites[0];
      if (pattern.active(w)) continue;
      const Orientation o = edge.sites[0] == v ? Orientation::Plus : Orientation::Minus;
      const auto& triplet = topo.table.at(EdgeId(e), o);
      for (const auto& p : triplet.paths) {
        const auto av = static_cast<std::uint8_t>(v), iw = static_cast<std::uint8_t>(w);
        segs.push_back({p.from.value(), e, EdgeId(e), o, av, iw});
        segs.push_back({e, p.to.value(), EdgeId(e), o, av, iw});
      }
    }
  }
  return segs;
}

/// Whether a point of ambiguity at face `f` joins (CONNECT) or separates the
/// two diagonal active toxels. MIXED applies the activity predicate to the mean
/// of the face's corner samples; ghost corners count as -infinity.
inline bool connects_at(FaceId f, const CellPattern& pattern, const ExtractionConfig& cfg) {
  switch (cfg.mode) {
    case ConnectivityMode::Connect: return true;
    case ConnectivityMode::Disconnect: return false;
    case ConnectivityMode::Mixed: break;
  }
  const auto& corners = topology().geometry.face(f).corners;
  std::array<double, 4> v{};
  for (int i = 0; i < 4; ++i) {
    if (pattern.ghost(corners[i])) return false;
    v[i] = pattern.values[corners[i]];
  }
  // Sorted summation: the mean must not depend on which cell asks.
  std::sort(v.begin(), v.end());
  const double avg = (((v[0] + v[1]) + v[2]) + v[3]) / 4.0;
  return cfg.strict ? avg > cfg.isovalue : avg >= cfg.isovalue;
}

namespace detail {

/// Pairs the `n` incoming segments `in` at face `f` with the outgoing `out`.
inline void pair_at_face(FaceId f, const int* in, const int* out, int n, std::span<const Segment> segs,
                         const CellPattern& pattern, const ExtractionConfig& cfg,
                         std::vector<std::pair<int, int>>& pairs) {
  if (n == 0) return;
  if (n == 2) {
    for (int k = 0; k < 2; ++k) {
      const Segment& s = segs[in[k]];
      int chosen = -1;
      for (int j = 0; j < 2; ++j) {
        if (segs[out[j]].center != s.center) {
          check_internal(chosen < 0, "ambiguous pairing at a regular connectivity point");
          chosen = out[j];
        }
      }
      check_internal(chosen >= 0, "no successor at a connectivity point");
      pairs.emplace_back(in[k], chosen);
    }
    return;
  }
  check_internal(n == 4, "connectivity point with an odd transition count");
  const bool connect = connects_at(f, pattern, cfg);
  for (int k = 0; k < 4; ++k) {
    const Segment& s = segs[in[k]];
    int chosen = -1;
    for (int j = 0; j < 4; ++j) {
      const Segment& o = segs[out[j]];
      if (o.center == s.center) continue;  // never anti-parallel
      const bool match = connect ? o.inactive_site == s.inactive_site : o.active_site == s.active_site;
      if (!match) continue;
      check_internal(chosen < 0, "ambiguous pairing at a point of ambiguity");
      chosen = out[j];
    }
    check_internal(chosen >= 0, "no successor at a point of ambiguity");
    pairs.emplace_back(in[k], chosen);
  }
}

}  // namespace detail

/// Pairs each segment arriving at face `f` with the segment that leaves it.
/// Returns (incoming index, outgoing index) pairs into `segs`.
inline std::vector<std::pair<int, int>> resolve_face(FaceId f, std::span<const Segment> segs,
                                                     const CellPattern& pattern,
                                                     const ExtractionConfig& cfg) {
  std::array<int, 8> in{}, out{};
  int n_in = 0, n_out = 0;
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    if (segs[i].to == f.value()) {
      check_internal(n_in < 8, "too many segments at a face");
      in[n_in++] = i;
    } else if (segs[i].from == f.value()) {
      check_internal(n_out < 8, "too many segments at a face");
      out[n_out++] = i;
    }
  }
  check_internal(n_in == n_out, "unbalanced segments at a connectivity point");
  std::vector<std::pair<int, int>> pairs;
  detail::pair_at_face(f, in.data(), out.data(), n_in, segs, pattern, cfg, pairs);
  return pairs;
}

/// All face pairings of a cell's segments, faces in id order.
inline std::vector<std::pair<int, int>> resolve_all(std::span<const Segment> segs,
                                                    const CellPattern& pattern,
                                                    const ExtractionConfig& cfg) {
  std::array<std::array<int, 8>, kFaceCount> in, out;
  std::array<int, kFaceCount> n_in{}, n_out{};
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    if (is_face_point(segs[i].to)) {
      const int f = segs[i].to - kFirstFace;
      check_internal(n_in[f] < 8, "too many segments at a face");
      in[f][n_in[f]++] = i;
    } else {
      const int f = segs[i].from - kFirstFace;
      check_internal(n_out[f] < 8, "too many segments at a face");
      out[f][n_out[f]++] = i;
    }
  }
  std::vector<std::pair<int, int>> all;
  all.reserve(segs.size() / 2);
  for (int f = 0; f < kFaceCount; ++f) {
    check_internal(n_in[f] == n_out[f], "unbalanced segments at a connectivity point");
    detail::pair_at_face(FaceId(f + kFirstFace), in[f].data(), out[f].data(), n_in[f], segs, pattern, cfg, all);
  }
  return all;
}

/// Links segments into cyclic vector paths. Inside an octant the successor of
/// a face -> center segment is the center -> face segment of the same path;
/// at faces the successor comes from `pairings`.
inline std::vector<InitialCycle> stitch(std::span<const Segment> segs,
                                        std::span<const std::pair<int, int>> pairings) {
  const int n = static_cast<int>(segs.size());
  std::vector<int> next(n, -1);
  for (int i = 0; i < n; ++i) {
    if (segs[i].into_center()) {
      check_internal(i + 1 < n && segs[i + 1].from == segs[i].to, "octant path is not contiguous");
      next[i] = i + 1;
    }
  }
  for (const auto& [a, b] : pairings) {
    check_internal(next[a] == -1, "segment paired twice");
    next[a] = b;
  }
  std::vector<InitialCycle> cycles;
  std::vector<char> used(n, 0);
  for (int start = 0; start < n; ++start) {
    if (used[start] || !segs[start].into_center()) continue;
    InitialCycle cycle;
    cycle.reserve(24);
    int i = start;
    do {
      check_internal(i >= 0, "unclosed chain of segments");
      check_internal(!used[i], "segment reached twice while stitching");
      used[i] = 1;
      cycle.push_back(segs[i].from);
      i = next[i];
    } while (i != start);
    cycles.push_back(std::move(cycle));
  }
  check_internal(std::all_of(used.begin(), used.end(), [](char u) { return u != 0; }),
                 "stitching left segments uncovered");
  return cycles;
}

/// Drops the connectivity points of a cycle, keeping support-point order.
inline ReducedCycle reduce(const InitialCycle& c) {
  ReducedCycle r;
  r.edges.reserve(c.size() / 2);
  for (int p : c) {
    if (is_edge_point(p)) r.edges.push_back(p);
  }
  return r;
}

/// Bounding cube (axis held fixed, side 0 or 1) that contains every support
/// point of the cycle, if exactly one does.
inline std::optional<std::pair<Axis, int>> bounding_cube(const ReducedCycle& c) {
  const auto& geo = topology().geometry;
  std::optional<std::pair<Axis, int>> found;
  for (int d = 0; d < kAxisCount; ++d) {
    for (int side = 0; side < 2; ++side) {
      const bool all = std::all_of(c.edges.begin(), c.edges.end(), [&](int e) {
        const auto& edge = geo.edges[e];
        return static_cast<int>(edge.axis) != d && edge.base[d] == side;
      });
      if (!all) continue;
      if (found) return std::nullopt;
      found = std::make_pair(static_cast<Axis>(d), side);
    }
  }
  return found;
}

namespace detail {

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace detail

/// Groups cycles that share a support-point pair into sections, ordered by
/// their smallest support point. Each directed pair must be matched by its
/// reverse inside the same section.
inline std::vector<Section> group_sections(std::vector<ReducedCycle> cycles, std::size_t cell = 0) {
  const int n = static_cast<int>(cycles.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  // owner[a][b]: cycle holding the directed pair a -> b (-1 if none).
  std::array<std::array<int, kEdgeCount>, kEdgeCount> owner;
  for (auto& row : owner) row.fill(-1);
  for (int ci = 0; ci < n; ++ci) {
    const auto& c = cycles[ci];
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int a = c[k], b = c.next(k);
      check_internal(a != b, "degenerate cycle step");
      check_internal(owner[a][b] == -1, "directed support pair appears twice");
      owner[a][b] = ci;
      if (owner[b][a] >= 0) {
        parent[detail::find_root(parent, ci)] = detail::find_root(parent, owner[b][a]);
      }
    }
  }
  for (int ci = 0; ci < n; ++ci) {
    const auto& c = cycles[ci];
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int a = c[k], b = c.next(k);
      check_internal(owner[b][a] >= 0, "section is not closed: support pair without its reverse");
    }
  }
  std::vector<int> group_of_root(n, -1);
  std::vector<Section> sections;
  for (int ci = 0; ci < n; ++ci) {
    const int r = detail::find_root(parent, ci);
    if (group_of_root[r] < 0) {
      group_of_root[r] = static_cast<int>(sections.size());
      sections.push_back({{}, cell});
    }
    sections[group_of_root[r]].cycles.push_back(std::move(cycles[ci]));
  }
  std::stable_sort(sections.begin(), sections.end(),
                   [](const Section& a, const Section& b) { return a.min_edge() < b.min_edge(); });
  return sections;
}

/// Reduced cycles of one cell.
inline std::vector<ReducedCycle> cell_cycles(const CellPattern& pattern, const ExtractionConfig& cfg) {
  const auto segs = emit_octants(pattern);
  const auto pairs = resolve_all(segs, pattern, cfg);
  const auto initial = stitch(segs, pairs);
  std::vector<ReducedCycle> reduced;
  reduced.reserve(initial.size());
  for (const auto& c : initial) reduced.push_back(reduce(c));
  return reduced;
}

/// Full per-cell protomesh pipeline: octants -> cycles -> sections.
inline std::vector<Section> extract_cell(const CellPattern& pattern, const ExtractionConfig& cfg,
                                         std::size_t cell = 0) {
  return group_sections(cell_cycles(pattern, cfg), cell);
}

/// Faces of the cell that are points of ambiguity: exactly two diagonally
/// opposite corners active.
inline std::uint32_t ambiguous_faces(std::uint16_t bits) {
  const auto& geo = topology().geometry;
  std::uint32_t mask = 0;
  for (int f = 0; f < kFaceCount; ++f) {
    const auto& c = geo.faces[f].corners;
    const bool a0 = (bits >> c[0]) & 1u, a1 = (bits >> c[1]) & 1u, a2 = (bits >> c[2]) & 1u,
               a3 = (bits >> c[3]) & 1u;
    if ((a0 && a2 && !a1 && !a3) || (a1 && a3 && !a0 && !a2)) mask |= 1u << f;
  }
  return mask;
}

/// CONNECT decisions at the points of ambiguity (bit f - 32 per face). Together
/// with the activity bits this determines the cell's cycles completely.
inline std::uint32_t connect_decisions(const CellPattern& p, const ExtractionConfig& cfg) {
  std::uint32_t mask = 0;
  const std::uint32_t poa = ambiguous_faces(p.bits);
  for (int f = 0; f < kFaceCount; ++f) {
    if (((poa >> f) & 1u) && connects_at(FaceId(f + kFirstFace), p, cfg)) mask |= 1u << f;
  }
  return mask;
}

/// Independent closure check: every directed support pair occurs once and its
/// reverse occurs once within the section.
inline bool section_closed(const Section& s) {
  std::array<std::array<std::uint8_t, kEdgeCount>, kEdgeCount> uses{};
  for (const auto& c : s.cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) ++uses[c[k]][c.next(k)];
  }
  for (int a = 0; a < kEdgeCount; ++a) {
    for (int b = 0; b < kEdgeCount; ++b) {
      if (uses[a][b] > 1 || uses[a][b] != uses[b][a]) return false;
    }
  }
  return true;
}

/// Euler characteristic V - E + F of the surface a section's cycles bound
/// (2 for a sphere, 0 for a torus).
inline int section_surface_euler(const Section& s) {
  std::uint32_t verts = 0;
  std::array<std::uint32_t, kEdgeCount> adj{};
  for (const auto& c : s.cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int u = c[k], v = c.next(k);
      const int a = std::min(u, v), b = std::max(u, v);
      verts |= 1u << u;
      adj[a] |= 1u << b;
    }
  }
  int edges = 0;
  for (auto m : adj) edges += std::popcount(m);
  return std::popcount(verts) - edges + static_cast<int>(s.cycles.size());
}

inline bool valid_cycle_length(std::size_t n) {
  return n == 3 || n == 4 || n == 5 || n == 6 || n == 7 || n == 8 || n == 9 || n == 12;
}

/// Statistics over many cells.
struct CellCensus {
  std::uint64_t cells = 0;
  std::uint64_t cycles = 0;
  std::uint64_t sections = 0;
  std::uint64_t bad_lengths = 0;       // cycle lengths outside {3..9, 12}
  std::uint64_t open_sections = 0;     // closure invariant violated
  std::uint64_t off_cube = 0;          // cycles not inside a single bounding cube
  std::uint64_t failed_cells = 0;      // extraction raised an internal error
  std::map<std::size_t, std::uint64_t> cycle_lengths;
  std::map<std::size_t, std::uint64_t> sections_per_cell;
  std::map<int, std::uint64_t> surface_euler;

  bool clean() const { return bad_lengths == 0 && open_sections == 0 && off_cube == 0 && failed_cells == 0; }

  void add(const std::vector<Section>& secs, std::uint64_t weight = 1) {
    cells += weight;
    sections += weight * secs.size();
    sections_per_cell[secs.size()] += weight;
    for (const auto& s : secs) {
      if (!section_closed(s)) open_sections += weight;
      surface_euler[section_surface_euler(s)] += weight;
      for (const auto& c : s.cycles) {
        cycles += weight;
        cycle_lengths[c.size()] += weight;
        if (!valid_cycle_length(c.size())) bad_lengths += weight;
        if (!bounding_cube(c)) off_cube += weight;
      }
    }
  }
};

/// Runs every non-trivial activity pattern through the per-cell pipeline.
/// CONNECT and DISCONNECT use indicator values; MIXED draws `mixed_samples`
/// random value sets per pattern with points of ambiguity (active values in
/// [0.5, 1], inactive in [0, 0.5), isovalue 0.5). Results are memoized per
/// decision set, which is all the cycles depend on.
inline CellCensus enumerate_patterns(ConnectivityMode mode, int mixed_samples = 1000, std::uint64_t seed = 1) {
  CellCensus census;
  ExtractionConfig cfg;
  cfg.mode = mode;
  cfg.isovalue = 0.5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> hi(0.5, 1.0), lo(0.0, 0.5);
  auto run = [&](const CellPattern& p, std::uint64_t weight) {
    try {
      census.add(extract_cell(p, cfg), weight);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Internal) throw;
      census.failed_cells += weight;
    }
  };
  const auto& geo = topology().geometry;
  struct Seen {
    std::uint32_t mask;
    CellPattern pattern;
    std::uint64_t count;
  };
  std::vector<Seen> seen;
  for (std::uint32_t bits = 1; bits < 0xFFFF; ++bits) {
    const CellPattern base = pattern_from_bits(static_cast<std::uint16_t>(bits));
    const std::uint32_t poa = ambiguous_faces(base.bits);
    if (mode != ConnectivityMode::Mixed || poa == 0) {
      run(base, 1);
      continue;
    }
    // Only corners of ambiguous faces influence the outcome; the rest keep
    // their indicator values.
    std::array<int, kFaceCount> faces{};
    int nf = 0;
    std::uint16_t sampled = 0;
    for (int f = 0; f < kFaceCount; ++f) {
      if (!((poa >> f) & 1u)) continue;
      faces[nf++] = f;
      for (int c : geo.faces[f].corners) sampled |= static_cast<std::uint16_t>(1u << c);
    }
    seen.clear();
    CellPattern p = base;
    for (int k = 0; k < mixed_samples; ++k) {
      for (int s = 0; s < kSiteCount; ++s) {
        if ((sampled >> s) & 1u) p.values[s] = p.active(s) ? hi(rng) : lo(rng);
      }
      std::uint32_t mask = 0;
      for (int i = 0; i < nf; ++i) {
        if (connects_at(FaceId(faces[i] + kFirstFace), p, cfg)) mask |= 1u << faces[i];
      }
      auto it = std::find_if(seen.begin(), seen.end(), [&](const Seen& x) { return x.mask == mask; });
      if (it == seen.end()) {
        seen.push_back({mask, p, 1});
      } else {
        ++it->count;
      }
    }
    for (const auto& x : seen) run(x.pattern, x.count);
  }
  return census;
}

}  // namespace steve
