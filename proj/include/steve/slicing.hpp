#pragma once

// Constant-time slices of a 4D tet mesh: closed, oriented 3D triangle meshes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "steve/error.hpp"
#include "steve/extraction.hpp"
#include "steve/parallel.hpp"
#include "steve/tessellation.hpp"
#include "steve/vec.hpp"

namespace steve {

struct TriMesh3 {
  std::vector<std::string> attr_names;
  std::vector<Vec3> vertices;
  std::vector<std::vector<double>> attrs;  // per vertex, parallel to attr_names
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

/// A crossing of the plane t = tau (+ infinitesimal) along the tet edge from
/// vertex `below` (t <= tau) to vertex `above` (t > tau).
struct SliceVertex {
  std::uint32_t below = 0;
  std::uint32_t above = 0;

  std::uint64_t key() const {
    const auto [lo, hi] = std::minmax(below, above);
    return static_cast<std::uint64_t>(lo) << 32 | hi;
  }
};

/// Outward-oriented cross-section of one tet: empty, a triangle, or a quad in
/// cyclic order.
struct SlicePolygon {
  int size = 0;
  std::array<SliceVertex, 4> v{};
};

/// A vertex lies above the plane iff t > tau. Vertices exactly at tau are
/// treated as below, which is the plane t = tau + delta for an infinitesimal
/// delta > 0: no vertex ever lies on it, and crossings at parameter 0 land
/// exactly on such vertices.
inline bool above_plane(const Vec4& p, double tau) { return p[3] > tau; }

/// Cross-section of the tet with vertex ids `ids` and positions `p`, assumed
/// to be stored with an outward cross4 normal.
inline SlicePolygon slice_tet(const std::array<Vec4, 4>& p, const std::array<std::uint32_t, 4>& ids, double tau) {
  std::array<int, 4> lo{}, hi{};
  int nlo = 0, nhi = 0;
  for (int i = 0; i < 4; ++i) {
    if (above_plane(p[i], tau)) {
      hi[nhi++] = i;
    } else {
      lo[nlo++] = i;
    }
  }
  SlicePolygon poly;
  std::array<std::array<int, 2>, 4> local{};  // (below, above) local indices
  if (nhi == 0 || nlo == 0) return poly;
  if (nhi == 1) {
    poly.size = 3;
    for (int k = 0; k < 3; ++k) local[k] = {lo[k], hi[0]};
  } else if (nlo == 1) {
    poly.size = 3;
    for (int k = 0; k < 3; ++k) local[k] = {lo[0], hi[k]};
  } else {
    poly.size = 4;
    local[0] = {lo[0], hi[0]};
    local[1] = {lo[0], hi[1]};
    local[2] = {lo[1], hi[1]};
    local[3] = {lo[1], hi[0]};
  }
  // Orientation from barycentric coordinates alone: with rows
  // beta_k = (e_below + e_above) / 2 for the first three polygon vertices and
  // e_u for an above vertex u, the slice is outward iff det < 0. The sign does
  // not depend on the actual crossing parameters, so no geometry is needed.
  std::array<Vec4, 4> rows{};
  for (int k = 0; k < 3; ++k) {
    rows[k][local[k][0]] += 0.5;
    rows[k][local[k][1]] += 0.5;
  }
  rows[3][hi[0]] = 1.0;
  const double d = det4(rows[0], rows[1], rows[2], rows[3]);
  check_internal(d != 0.0, "degenerate barycentric slice frame");
  if (d > 0.0) std::reverse(local.begin(), local.begin() + poly.size);
  for (int k = 0; k < poly.size; ++k) poly.v[k] = {ids[local[k][0]], ids[local[k][1]]};
  return poly;
}

/// Splits a polygon into triangles: a quad along the diagonal that starts at
/// its lowest-key vertex.
inline std::vector<std::array<SliceVertex, 3>> triangulate(const SlicePolygon& poly) {
  if (poly.size == 3) return {{poly.v[0], poly.v[1], poly.v[2]}};
  if (poly.size != 4) return {};
  int first = 0;
  for (int k = 1; k < 4; ++k) {
    if (poly.v[k].key() < poly.v[first].key()) first = k;
  }
  const auto& q = poly.v;
  const int a = first, b = (first + 1) % 4, c = (first + 2) % 4, d = (first + 3) % 4;
  return {{q[a], q[b], q[c]}, {q[a], q[c], q[d]}};
}

/// Tets per slicing work unit.
inline constexpr std::size_t kTetsPerChunk = 8192;

/// Slice of the mesh at time tau. Vertices are welded by the tet edge they lie
/// on, so neighboring tets share them exactly.
inline TriMesh3 slice(const TetMesh4& mesh, double tau, int workers = 0) {
  if (!std::isfinite(tau)) fail(ErrorKind::NonFinite, "slice time must be finite");
  const std::size_t n_chunks = (mesh.tets.size() + kTetsPerChunk - 1) / kTetsPerChunk;
  auto chunks = parallel_chunks(n_chunks, resolve_workers(workers), [&](std::size_t c) {
    std::vector<std::array<SliceVertex, 3>> tris;
    const std::size_t end = std::min(mesh.tets.size(), (c + 1) * kTetsPerChunk);
    for (std::size_t i = c * kTetsPerChunk; i < end; ++i) {
      const Tet4& t = mesh.tets[i];
      for (const auto& tri : triangulate(slice_tet(mesh.corners(t), t.v, tau))) tris.push_back(tri);
    }
    return tris;
  });

  TriMesh3 out;
  out.attr_names = mesh.attr_names;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto weld = [&](const SliceVertex& sv) {
    auto [it, inserted] = index.try_emplace(sv.key(), static_cast<std::uint32_t>(out.vertices.size()));
    if (inserted) {
      const Vertex4& b = mesh.vertices[sv.below];
      const Vertex4& a = mesh.vertices[sv.above];
      const double lambda = (tau - b.pos[3]) / (a.pos[3] - b.pos[3]);
      const Vec4 p = lerp(b.pos, a.pos, lambda);
      out.vertices.push_back({p[0], p[1], p[2]});
      std::vector<double> attrs(b.attrs.size());
      for (std::size_t k = 0; k < attrs.size(); ++k) attrs[k] = b.attrs[k] + lambda * (a.attrs[k] - b.attrs[k]);
      out.attrs.push_back(std::move(attrs));
    }
    return it->second;
  };
  for (const auto& chunk : chunks) {
    for (const auto& tri : chunk) out.triangles.push_back({weld(tri[0]), weld(tri[1]), weld(tri[2])});
  }
  return out;
}

inline std::vector<TriMesh3> slice_series(const TetMesh4& mesh, const std::vector<double>& taus, int workers = 0) {
  std::vector<TriMesh3> out;
  out.reserve(taus.size());
  for (double tau : taus) out.push_back(slice(mesh, tau, workers));
  return out;
}

struct SliceReport {
  std::size_t boundary_edges = 0;     // used by one triangle
  std::size_t nonmanifold_edges = 0;  // used by more than two
  std::size_t misoriented_edges = 0;  // two uses in the same direction
  std::size_t components = 0;         // edge-connected triangle groups

  bool closed() const { return boundary_edges == 0 && nonmanifold_edges == 0 && misoriented_edges == 0; }
};

/// Closure, orientation and component count of a triangle mesh.
inline SliceReport check_slice(const TriMesh3& m) {
  struct Use {
    std::uint64_t key;
    std::uint32_t tri;
    bool forward;
  };
  std::vector<Use> uses;
  uses.reserve(3 * m.triangles.size());
  for (std::uint32_t t = 0; t < m.triangles.size(); ++t) {
    const auto& v = m.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = v[k], b = v[(k + 1) % 3];
      const auto [lo, hi] = std::minmax(a, b);
      uses.push_back({static_cast<std::uint64_t>(lo) << 32 | hi, t, a < b});
    }
  }
  std::sort(uses.begin(), uses.end(), [](const Use& a, const Use& b) {
    return a.key != b.key ? a.key < b.key : a.tri < b.tri;
  });
  std::vector<int> parent(m.triangles.size());
  std::iota(parent.begin(), parent.end(), 0);
  SliceReport r;
  for (std::size_t i = 0; i < uses.size();) {
    std::size_t j = i;
    while (j < uses.size() && uses[j].key == uses[i].key) ++j;
    const std::size_t n = j - i;
    if (n == 1) {
      ++r.boundary_edges;
    } else if (n > 2) {
      ++r.nonmanifold_edges;
    } else if (uses[i].forward == uses[i + 1].forward) {
      ++r.misoriented_edges;
    }
    for (std::size_t k = i + 1; k < j; ++k) {
      parent[detail::find_root(parent, static_cast<int>(uses[i].tri))] =
          detail::find_root(parent, static_cast<int>(uses[k].tri));
    }
    i = j;
  }
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    if (detail::find_root(parent, static_cast<int>(t)) == static_cast<int>(t)) ++r.components;
  }
  return r;
}

/// Unit normal of a slice triangle (zero if it has no area).
inline Vec3 triangle_normal(const TriMesh3& m, std::size_t t) {
  const auto& v = m.triangles[t];
  const Vec3 n = cross(m.vertices[v[1]] - m.vertices[v[0]], m.vertices[v[2]] - m.vertices[v[0]]);
  const double len = norm(n);
  return len > 0.0 ? (1.0 / len) * n : Vec3{};
}

}  // namespace steve
