#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "steve/tessellation.hpp"
#include "support.hpp"

using namespace steve;

namespace {

TetMesh4 single_toxel_mesh(Placement placement = Placement::Midpoint) {
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  cfg.placement = placement;
  return extract_hypersurface(synth_single_toxel({3, 3, 3, 3}, {1, 1, 1, 1}), cfg);
}

Vec4 centroid(const TetMesh4& m, const Tet4& t) {
  Vec4 c{};
  for (auto v : t.v) c = c + m.vertices[v].pos;
  return 0.25 * c;
}

}  // namespace

TEST(Tessellation, SingleToxelIsTheSixteenCell) {
  const TetMesh4 m = single_toxel_mesh();
  const ValidationReport r = validate(m);
  EXPECT_EQ(r.vertices, 8u);
  EXPECT_EQ(r.edges, 24u);
  EXPECT_EQ(r.triangles, 32u);
  EXPECT_EQ(r.tets, 16u);
  EXPECT_EQ(r.euler(), 0);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.euler_ok());
  ASSERT_EQ(r.components.size(), 1u);
  // vertices at the toxel center +- 0.5 along each axis
  std::set<std::vector<double>> pos;
  for (const auto& v : m.vertices) pos.insert({v.pos.begin(), v.pos.end()});
  for (int a = 0; a < 4; ++a) {
    for (double s : {-0.5, 0.5}) {
      std::vector<double> p(4, 1.0);
      p[a] += s;
      EXPECT_TRUE(pos.count(p));
    }
  }
  // every 4-normal points away from the toxel
  for (const auto& t : m.tets) {
    const Vec4 d = centroid(m, t) - Vec4{1, 1, 1, 1};
    EXPECT_GT(dot(t.normal, d), 0.0);
    EXPECT_NEAR(norm(t.normal), 1.0, 1e-12);
  }
}

TEST(Tessellation, SupportLambda) {
  EXPECT_EQ(support_lambda(1.0, 0.0, 0.5, Placement::Interpolate), 0.5);
  EXPECT_EQ(support_lambda(3.0, -1.0, 0.0, Placement::Interpolate), 0.75);
  EXPECT_EQ(support_lambda(1.0, -3.0, 0.0, Placement::Interpolate), 0.25);
  EXPECT_EQ(support_lambda(3.0, -1.0, 0.0, Placement::Midpoint), 0.5);
  EXPECT_EQ(support_lambda(0.5, 0.0, 0.5, Placement::Interpolate, 1e-3), 1e-3);
  EXPECT_EQ(support_lambda(0.5, 0.0, 0.5, Placement::Interpolate, 0.1), 0.1);
  EXPECT_EQ(support_lambda(3.0, -1.0, 0.0, Placement::Interpolate, 1e-3, true), 0.5);
}

TEST(Tessellation, NormalSignFollowsVertexOrder) {
  const std::array<Vec4, 4> p{Vec4{0, 0, 0, 0}, Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}};
  const Vec4 n = four_normal(p);
  EXPECT_NEAR(std::abs(n[3]), 1.0, 1e-15);
  const Vec4 m = four_normal({p[1], p[0], p[2], p[3]});
  for (int a = 0; a < 4; ++a) EXPECT_EQ(m[a], -n[a]);
  EXPECT_NEAR(tet_volume(p), 1.0 / 6.0, 1e-15);
}

TEST(Tessellation, DegenerateTetIsRejected) {
  const std::array<Vec4, 4> flat{Vec4{0, 0, 0, 0}, Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{1, 1, 0, 0}};
  try {
    four_normal(flat);
    FAIL() << "degenerate tet accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(Tessellation, NormalsAreUnitAndOrthogonal) {
  for (auto placement : {Placement::Midpoint, Placement::Interpolate}) {
    ExtractionConfig cfg;
    cfg.isovalue = 0.5;
    cfg.placement = placement;
    const TetMesh4 m = extract_hypersurface(fixtures::random_field(21, {6, 6, 6, 6}), cfg);
    ASSERT_FALSE(m.tets.empty());
    for (const auto& t : m.tets) {
      if (t.normal == Vec4{}) continue;
      EXPECT_NEAR(norm(t.normal), 1.0, 1e-12);
      const auto p = m.corners(t);
      for (int k = 1; k < 4; ++k) EXPECT_NEAR(dot(t.normal, p[k] - p[0]), 0.0, 1e-12);
    }
  }
}

TEST(Tessellation, HypersphereNormalsPointOutward) {
  ExtractionConfig cfg;
  cfg.placement = Placement::Interpolate;
  const Vec4 c{5.5, 5.5, 5.5, 5.5};
  const TetMesh4 m = extract_hypersurface(synth_hypersphere({12, 12, 12, 12}, c, 4.0), cfg);
  ASSERT_TRUE(validate(m).ok());
  for (const auto& t : m.tets) EXPECT_GT(dot(t.normal, centroid(m, t) - c), 0.0);
}

TEST(Validator, DetectsMissingTet) {
  TetMesh4 m = single_toxel_mesh();
  m.tets.pop_back();
  const ValidationReport r = validate(m);
  EXPECT_FALSE(r.closed());
  EXPECT_EQ(r.boundary.size(), 4u);
  EXPECT_FALSE(r.ok());
}

TEST(Validator, DetectsFlippedTet) {
  TetMesh4 m = single_toxel_mesh();
  std::swap(m.tets[3].v[0], m.tets[3].v[1]);
  const ValidationReport r = validate(m);
  EXPECT_TRUE(r.closed());
  EXPECT_EQ(r.misoriented.size(), 4u);
  EXPECT_FALSE(r.oriented());
}

TEST(Validator, DetectsDuplicatedTetAndBadIndices) {
  TetMesh4 m = single_toxel_mesh();
  m.tets.push_back(m.tets[0]);
  EXPECT_EQ(validate(m).overshared.size(), 4u);
  TetMesh4 bad = single_toxel_mesh();
  bad.tets[0].v[2] = 99;
  EXPECT_FALSE(validate(bad).bad_indices.empty());
}

TEST(Validator, EulerMatchesVertexLinks) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (auto mode : {ConnectivityMode::Connect, ConnectivityMode::Disconnect, ConnectivityMode::Mixed}) {
      ExtractionConfig cfg;
      cfg.mode = mode;
      cfg.isovalue = fixtures::random_isovalue(seed);
      const TetMesh4 m = extract_hypersurface(fixtures::random_field(seed, {6, 6, 6, 6}), cfg);
      const ValidationReport r = validate(m);
      ASSERT_TRUE(r.ok());
      EXPECT_EQ(r.euler(), fixtures::euler_from_links(m));
      long long sum = 0;
      for (const auto& c : r.components) sum += c.euler();
      EXPECT_EQ(sum, r.euler());
    }
  }
}

TEST(Tessellation, SectionTetCounts) {
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  for (auto mode : {ConnectivityMode::Connect, ConnectivityMode::Disconnect}) {
    cfg.mode = mode;
    for (std::uint32_t bits = 1; bits < 0xFFFF; bits += 7) {
      for (const auto& s : extract_cell(pattern_from_bits(static_cast<std::uint16_t>(bits)), cfg)) {
        const SectionTets st = decompose(s);
        EXPECT_EQ(st.tets.size(), expected_tet_count(s));
        for (const auto& t : st.tets) {
          std::set<int> distinct(t.begin(), t.end());
          EXPECT_EQ(distinct.size(), 4u);
        }
      }
    }
  }
}

TEST(Tessellation, PlacementChangesPositionsOnly) {
  ExtractionConfig a;
  a.isovalue = 0.4;
  a.placement = Placement::Midpoint;
  ExtractionConfig b = a;
  b.placement = Placement::Interpolate;
  const ToxelField f = fixtures::random_field(5, {6, 6, 6, 6});
  const TetMesh4 ma = extract_hypersurface(f, a), mb = extract_hypersurface(f, b);
  ASSERT_EQ(ma.vertices.size(), mb.vertices.size());
  ASSERT_EQ(ma.tets.size(), mb.tets.size());
  for (std::size_t i = 0; i < ma.vertices.size(); ++i) EXPECT_EQ(ma.vertices[i].key, mb.vertices[i].key);
  for (std::size_t i = 0; i < ma.tets.size(); ++i) EXPECT_EQ(ma.tets[i].v, mb.tets[i].v);
}

TEST(Tessellation, AttributesFollowPositions) {
  // An aux channel equal to the x coordinate must be reproduced exactly by the
  // interpolation at every vertex.
  ToxelField f = fixtures::random_field(8, {5, 5, 5, 5});
  std::vector<double> x(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) x[i] = f.coords(i)[0];
  f.add_aux("x", x);
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  cfg.placement = Placement::Interpolate;
  const TetMesh4 m = extract_hypersurface(f, cfg);
  ASSERT_EQ(m.attr_names, std::vector<std::string>{"x"});
  for (const auto& v : m.vertices) {
    // ghost-side support points sit half way out of the grid where the
    // replicated channel is constant
    if (v.pos[0] < 0 || v.pos[0] > 4) continue;
    EXPECT_NEAR(v.attrs[0], v.pos[0], 1e-12);
  }
}

TEST(Tessellation, PositiveOctantFacetHasPositiveNormal) {
  const TetMesh4 m = single_toxel_mesh();
  int found = 0;
  for (const auto& t : m.tets) {
    const Vec4 d = centroid(m, t) - Vec4{1, 1, 1, 1};
    if (d[0] > 0 && d[1] > 0 && d[2] > 0 && d[3] > 0) {
      ++found;
      for (int a = 0; a < 4; ++a) EXPECT_NEAR(t.normal[a], 0.5, 1e-12);
    }
  }
  EXPECT_EQ(found, 1);
}

TEST(Tessellation, IsochronousCubeFacesForward) {
  // past layer active, future layer empty: the cube section at t = 0.5
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  const TetMesh4 m = extract_hypersurface(fixtures::cell_field(0x00FF), cfg);
  int flat = 0;
  for (const auto& t : m.tets) {
    bool at_half = true;
    for (auto v : t.v) at_half = at_half && m.vertices[v].pos[3] == 0.5;
    if (!at_half) continue;
    const Vec4 c = centroid(m, t);
    if (c[0] < 0 || c[0] > 1 || c[1] < 0 || c[1] > 1 || c[2] < 0 || c[2] > 1) continue;
    ++flat;
    EXPECT_NEAR(t.normal[0], 0.0, 1e-12);
    EXPECT_NEAR(t.normal[1], 0.0, 1e-12);
    EXPECT_NEAR(t.normal[2], 0.0, 1e-12);
    EXPECT_NEAR(t.normal[3], 1.0, 1e-12);
  }
  EXPECT_EQ(flat, 24);
}

TEST(Tessellation, FullGridIsClosedByGhosts) {
  ExtractionConfig cfg;
  const TetMesh4 m = extract_hypersurface(ToxelField({2, 2, 2, 2}, std::vector<double>(16, 1.0)), cfg);
  const ValidationReport r = validate(m);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.components.size(), 1u);
  EXPECT_EQ(r.euler(), 0);
}

TEST(Tessellation, WorkerCountDoesNotChangeOutput) {
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  const ToxelField f = fixtures::random_field(13, {7, 6, 7, 6});
  cfg.workers = 1;
  const std::string one = fixtures::st4_text(extract_hypersurface(f, cfg));
  cfg.workers = 3;
  EXPECT_EQ(one, fixtures::st4_text(extract_hypersurface(f, cfg)));
}

TEST(Tessellation, RejectsBadConfig) {
  ExtractionConfig cfg;
  cfg.clamp = 0.5;
  EXPECT_THROW(extract_hypersurface(ToxelField({2, 2, 2, 2}, std::vector<double>(16, 1.0)), cfg), Error);
}
