#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "steve/steve.hpp"

namespace steve::fixtures {

inline ToxelField random_field(std::uint64_t seed, Dims4 dims = {8, 8, 8, 8}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return ToxelField(dims, std::move(v));
}

/// Isovalue drawn for a random field (kept away from the value range ends).
inline double random_isovalue(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5DEECE66Dull);
  return std::uniform_real_distribution<double>(0.2, 0.8)(rng);
}

/// A 2x2x2x2 field with values 1 at the active sites and 0 elsewhere.
inline ToxelField cell_field(std::uint16_t bits) {
  std::vector<double> v(16, 0.0);
  for (int s = 0; s < kSiteCount; ++s) {
    const Lattice4 p = site_coords(SiteId(s));
    v[p[0] + 2 * p[1] + 4 * p[2] + 8 * p[3]] = ((bits >> s) & 1u) ? 1.0 : 0.0;
  }
  return ToxelField({2, 2, 2, 2}, std::move(v));
}

inline std::uint16_t sites(std::initializer_list<int> ids) {
  std::uint16_t b = 0;
  for (int s : ids) b |= static_cast<std::uint16_t>(1u << s);
  return b;
}

inline std::size_t cell_tet_count(const std::vector<Section>& secs) {
  std::size_t n = 0;
  for (const auto& s : secs) n += decompose(s).tets.size();
  return n;
}

inline std::string st4_text(const TetMesh4& m) {
  std::ostringstream out;
  write_st4(out, m);
  return out.str();
}

inline std::string obj_text(const TriMesh3& m) {
  std::ostringstream out;
  write_obj(out, m);
  return out.str();
}

/// Euler characteristic of a tet mesh computed from the links of its vertices:
/// for a closed pseudomanifold, chi = sum over vertices of (1 - chi(link) / 2).
inline long long euler_from_links(const TetMesh4& m) {
  std::vector<std::vector<std::array<std::uint32_t, 3>>> link(m.vertices.size());
  for (const auto& t : m.tets) {
    for (int k = 0; k < 4; ++k) {
      std::array<std::uint32_t, 3> opp{};
      int j = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != k) opp[j++] = t.v[i];
      }
      std::sort(opp.begin(), opp.end());
      link[t.v[k]].push_back(opp);
    }
  }
  long long twice = 0;
  for (const auto& tris : link) {
    if (tris.empty()) continue;
    std::set<std::uint32_t> verts;
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& t : tris) {
      verts.insert(t.begin(), t.end());
      edges.insert({t[0], t[1]});
      edges.insert({t[0], t[2]});
      edges.insert({t[1], t[2]});
    }
    const long long chi = static_cast<long long>(verts.size()) - static_cast<long long>(edges.size()) +
                          static_cast<long long>(tris.size());
    twice += 2 - chi;
  }
  return twice / 2;
}

/// Undirected facet set of the tets that come from cells away from the grid
/// boundary, keyed by vertex identity. The value is the traversal parity of
/// the facet relative to its sorted key order.
using FacetKey = std::array<VertexKey, 3>;

struct KeyLess {
  bool operator()(const VertexKey& a, const VertexKey& b) const {
    return a.kind != b.kind ? a.kind < b.kind : a.ids < b.ids;
  }
  bool operator()(const FacetKey& a, const FacetKey& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), *this);
  }
};

inline std::map<FacetKey, std::vector<int>, KeyLess> interior_facets(const TetMesh4& m, const Dims4& dims) {
  // Cell grid of the ghost-padded field: (d + 1) cells per axis.
  const Dims4 cells{dims[0] + 1, dims[1] + 1, dims[2] + 1, dims[3] + 1};
  auto interior = [&](std::uint64_t c) {
    for (int a = 0; a < 4; ++a) {
      const int x = static_cast<int>(c % cells[a]);
      c /= cells[a];
      if (x < 1 || x > dims[a] - 1) return false;
    }
    return true;
  };
  std::map<FacetKey, std::vector<int>, KeyLess> out;
  for (const auto& t : m.tets) {
    if (!interior(t.origin.cell)) continue;
    for (const auto& f : tet_facets(t.v)) {
      std::array<int, 3> order{0, 1, 2};
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return KeyLess{}(m.vertices[f[a]].key, m.vertices[f[b]].key);
      });
      // Parity of the permutation that sorts the facet.
      int inversions = 0;
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) inversions += order[i] > order[j];
      }
      FacetKey key{m.vertices[f[order[0]]].key, m.vertices[f[order[1]]].key, m.vertices[f[order[2]]].key};
      out[key].push_back(inversions % 2);
    }
  }
  for (auto& [k, v] : out) std::sort(v.begin(), v.end());
  return out;
}

/// Complemented activity: same cycles, opposite orientation.
inline ToxelField negated(const ToxelField& f) {
  std::vector<double> v(f.scalar().begin(), f.scalar().end());
  for (auto& x : v) x = -x;
  return ToxelField(f.dims(), std::move(v), f.spacing(), f.origin());
}

inline ConnectivityMode dual(ConnectivityMode m) {
  switch (m) {
    case ConnectivityMode::Connect: return ConnectivityMode::Disconnect;
    case ConnectivityMode::Disconnect: return ConnectivityMode::Connect;
    case ConnectivityMode::Mixed: return ConnectivityMode::Mixed;
  }
  return m;
}

/// True when the complemented extraction reproduces every interior facet of
/// the original with reversed traversal.
inline bool complement_symmetric(const ToxelField& f, double theta, ConnectivityMode mode, std::string* why = nullptr) {
  ExtractionConfig a;
  a.isovalue = theta;
  a.mode = mode;
  a.workers = 1;
  ExtractionConfig b = a;
  b.isovalue = -theta;
  b.strict = true;
  b.mode = dual(mode);
  const auto fa = interior_facets(extract_hypersurface(f, a), f.dims());
  const auto fb = interior_facets(extract_hypersurface(negated(f), b), f.dims());
  if (fa.size() != fb.size()) {
    if (why) *why = "facet counts differ: " + std::to_string(fa.size()) + " vs " + std::to_string(fb.size());
    return false;
  }
  for (auto ia = fa.begin(), ib = fb.begin(); ia != fa.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      if (why) *why = "facet sets differ";
      return false;
    }
    std::vector<int> flipped = ib->second;
    for (int& p : flipped) p ^= 1;
    std::sort(flipped.begin(), flipped.end());
    if (flipped != ia->second) {
      if (why) *why = "a shared facet keeps its orientation";
      return false;
    }
  }
  return !fa.empty();
}

inline std::size_t slice_components(const TetMesh4& m, double tau) { return check_slice(slice(m, tau, 1)).components; }

}  // namespace steve::fixtures
