#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "steve/slicing.hpp"
#include "support.hpp"

using namespace steve;

namespace {

std::array<Vec4, 4> tet_at_times(double a, double b, double c, double d) {
  return {Vec4{0, 0, 0, a}, Vec4{1, 0, 0, b}, Vec4{0, 1, 0, c}, Vec4{0, 0, 1, d}};
}

const std::array<std::uint32_t, 4> kIds{0, 1, 2, 3};

TetMesh4 single_toxel_mesh() {
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  return extract_hypersurface(synth_single_toxel({3, 3, 3, 3}, {1, 1, 1, 1}), cfg);
}

/// Random field whose outermost layer is inactive, so no support point sits
/// next to a ghost toxel.
ToxelField framed_field(std::uint64_t seed) {
  ToxelField f = fixtures::random_field(seed, {7, 7, 7, 7});
  std::vector<double> v(f.scalar().begin(), f.scalar().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Lattice4 c = f.coords(i);
    for (int a = 0; a < 4; ++a) {
      if (c[a] == 0 || c[a] == 6) v[i] = 0.0;
    }
  }
  return ToxelField(f.dims(), std::move(v));
}

}  // namespace

TEST(SliceTet, OneVersusThreeGivesATriangle) {
  EXPECT_EQ(slice_tet(tet_at_times(0, 0, 0, 1), kIds, 0.5).size, 3);
  EXPECT_EQ(slice_tet(tet_at_times(1, 1, 0, 1), kIds, 0.5).size, 3);
}

TEST(SliceTet, TwoVersusTwoGivesAQuad) {
  const SlicePolygon q = slice_tet(tet_at_times(0, 0, 1, 1), kIds, 0.5);
  ASSERT_EQ(q.size, 4);
  // cyclic: consecutive crossings share a tet vertex
  for (int k = 0; k < 4; ++k) {
    const auto& a = q.v[k];
    const auto& b = q.v[(k + 1) % 4];
    EXPECT_TRUE(a.below == b.below || a.above == b.above);
  }
  EXPECT_EQ(triangulate(q).size(), 2u);
}

TEST(SliceTet, OneSidedGivesNothing) {
  EXPECT_EQ(slice_tet(tet_at_times(0, 0, 0, 0), kIds, 0.5).size, 0);
  EXPECT_EQ(slice_tet(tet_at_times(1, 1, 1, 1), kIds, 0.5).size, 0);
}

TEST(SliceTet, VertexOnThePlaneCountsAsBelow) {
  EXPECT_EQ(slice_tet(tet_at_times(0.5, 0, 0, 1), kIds, 0.5).size, 3);
  EXPECT_EQ(slice_tet(tet_at_times(0.5, 0.5, 0.5, 0.5), kIds, 0.5).size, 0);
}

TEST(Slice, SingleToxelCentreIsAnOctahedron) {
  const TriMesh3 s = slice(single_toxel_mesh(), 1.0);
  EXPECT_EQ(s.vertices.size(), 6u);
  EXPECT_EQ(s.triangles.size(), 8u);
  const SliceReport r = check_slice(s);
  EXPECT_TRUE(r.closed());
  EXPECT_EQ(r.components, 1u);
  std::set<std::array<double, 3>> expected;
  for (int a = 0; a < 3; ++a) {
    for (double d : {-0.5, 0.5}) {
      std::array<double, 3> p{1, 1, 1};
      p[a] += d;
      expected.insert(p);
    }
  }
  for (const auto& v : s.vertices) {
    double best = 1e9;
    for (const auto& e : expected) best = std::min(best, norm(v - e));
    EXPECT_LE(best, 1e-12);
  }
  for (std::size_t t = 0; t < s.triangles.size(); ++t) {
    Vec3 c{};
    for (auto i : s.triangles[t]) c = c + s.vertices[i];
    EXPECT_GT(dot(triangle_normal(s, t), (1.0 / 3) * c - Vec3{1, 1, 1}), 0.0);
  }
}

TEST(Slice, SingleToxelShrinksTowardsItsTimeBounds) {
  const TetMesh4 m = single_toxel_mesh();
  for (double tau : {0.51, 0.6, 1.3, 1.49}) {
    const TriMesh3 s = slice(m, tau);
    EXPECT_TRUE(check_slice(s).closed()) << tau;
    EXPECT_EQ(s.triangles.size(), 8u);
    const double r = 0.5 - std::abs(tau - 1.0);
    for (const auto& v : s.vertices) EXPECT_NEAR(std::abs(v[0] - 1) + std::abs(v[1] - 1) + std::abs(v[2] - 1), r, 1e-12);
  }
  // t = 0.5 is read as 0.5 + delta: the lower pole is cut, at zero size
  const TriMesh3 pole = slice(m, 0.5);
  EXPECT_TRUE(check_slice(pole).closed());
  for (const auto& v : pole.vertices) EXPECT_NEAR(norm(v - Vec3{1, 1, 1}), 0.0, 1e-12);
  EXPECT_TRUE(slice(m, 1.5).triangles.empty());
}

TEST(Slice, TrianglesFaceLikeTheirTet) {
  for (auto placement : {Placement::Midpoint, Placement::Interpolate}) {
    ExtractionConfig cfg;
    cfg.isovalue = 0.45;
    cfg.placement = placement;
    const TetMesh4 m = extract_hypersurface(fixtures::random_field(31, {6, 6, 6, 6}), cfg);
    std::size_t checked = 0;
    for (double tau : {1.3, 2.5, 3.7}) {
      for (const auto& t : m.tets) {
        const Vec3 spatial{t.normal[0], t.normal[1], t.normal[2]};
        if (norm(spatial) < 1e-6) continue;
        const auto p = m.corners(t);
        for (const auto& tri : triangulate(slice_tet(p, t.v, tau))) {
          std::array<Vec3, 3> q{};
          for (int k = 0; k < 3; ++k) {
            const Vec4& b = m.vertices[tri[k].below].pos;
            const Vec4& a = m.vertices[tri[k].above].pos;
            const Vec4 x = lerp(b, a, (tau - b[3]) / (a[3] - b[3]));
            q[k] = {x[0], x[1], x[2]};
          }
          const Vec3 n = cross(q[1] - q[0], q[2] - q[0]);
          if (norm(n) < 1e-9) continue;
          EXPECT_GT(dot(n, spatial), 0.0);
          ++checked;
        }
      }
    }
    EXPECT_GT(checked, 1000u);
  }
}

TEST(Slice, RandomFieldSlicesAreClosed) {
  for (auto mode : {ConnectivityMode::Connect, ConnectivityMode::Disconnect, ConnectivityMode::Mixed}) {
    ExtractionConfig cfg;
    cfg.mode = mode;
    cfg.isovalue = 0.55;
    const TetMesh4 m = extract_hypersurface(fixtures::random_field(41, {6, 6, 6, 6}), cfg);
    for (double tau : {-0.5, 0.0, 0.25, 1.0, 2.5, 4.999, 5.0, 5.5}) {
      EXPECT_TRUE(check_slice(slice(m, tau)).closed()) << tau;
    }
  }
}

TEST(Slice, DiagonalPairSplitsOverTime) {
  // past layer: one full spatial face; future: two toxels on its diagonal
  const ToxelField f = fixtures::cell_field(fixtures::sites({4, 5, 6, 7, 12, 14}));
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  cfg.mode = ConnectivityMode::Disconnect;
  const TetMesh4 m = extract_hypersurface(f, cfg);
  ASSERT_TRUE(validate(m).ok());
  EXPECT_EQ(fixtures::slice_components(m, 0.25), 1u);
  EXPECT_EQ(fixtures::slice_components(m, 0.75), 1u);
  // the ambiguous face sits at t = 1, so that is where the pieces part
  EXPECT_EQ(fixtures::slice_components(m, 1.0), 2u);
  EXPECT_EQ(fixtures::slice_components(m, 1.25), 2u);
  // connecting the diagonal holds it together through t = 1
  cfg.mode = ConnectivityMode::Connect;
  const TetMesh4 c = extract_hypersurface(f, cfg);
  EXPECT_EQ(fixtures::slice_components(c, 0.75), 1u);
  EXPECT_EQ(fixtures::slice_components(c, 1.0), 1u);
  EXPECT_EQ(fixtures::slice_components(c, 1.25), 2u);
}

TEST(Slice, AttributesInterpolateLinearly) {
  ToxelField f = framed_field(17);
  std::vector<double> y(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) y[i] = 2.0 * f.coords(i)[1] + 1.0;
  f.add_aux("y2", y);
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  cfg.placement = Placement::Interpolate;
  const TriMesh3 s = slice(extract_hypersurface(f, cfg), 2.7);
  ASSERT_FALSE(s.vertices.empty());
  ASSERT_EQ(s.attr_names, std::vector<std::string>{"y2"});
  for (std::size_t i = 0; i < s.vertices.size(); ++i) EXPECT_NEAR(s.attrs[i][0], 2.0 * s.vertices[i][1] + 1.0, 1e-12);
}

TEST(Slice, WorkerCountDoesNotChangeOutput) {
  ExtractionConfig cfg;
  cfg.isovalue = 0.5;
  const TetMesh4 m = extract_hypersurface(fixtures::random_field(3, {8, 8, 8, 8}), cfg);
  ASSERT_GT(m.tets.size(), kTetsPerChunk);
  const std::string one = fixtures::obj_text(slice(m, 3.4, 1));
  EXPECT_EQ(one, fixtures::obj_text(slice(m, 3.4, 4)));
  EXPECT_EQ(one, fixtures::obj_text(slice(m, 3.4, 16)));
}

TEST(Slice, SeriesIsIndependentSlices) {
  const TetMesh4 m = single_toxel_mesh();
  EXPECT_TRUE(slice_series(m, {}).empty());
  const auto two = slice_series(m, {0.8, 1.0});
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(fixtures::obj_text(two[1]), fixtures::obj_text(slice(m, 1.0)));
}

TEST(Slice, HypersphereProfileGrowsThenShrinks) {
  ExtractionConfig cfg;
  cfg.placement = Placement::Interpolate;
  const double t0 = 7.5, R = 6.0;
  const TetMesh4 m = extract_hypersurface(synth_hypersphere({16, 16, 16, 16}, {7.5, 7.5, 7.5, t0}, R), cfg);
  // area of the slice tracks 4 pi r(t)^2
  double worst = 0.0;
  std::vector<std::size_t> counts;
  for (int k = 0; k < 100; ++k) {
    const double tau = t0 - 5.0 + 10.0 * k / 99.0;
    const TriMesh3 s = slice(m, tau);
    ASSERT_TRUE(check_slice(s).closed());
    counts.push_back(s.vertices.size());
    double area = 0.0;
    for (std::size_t t = 0; t < s.triangles.size(); ++t) {
      const auto& v = s.triangles[t];
      area += 0.5 * norm(cross(s.vertices[v[1]] - s.vertices[v[0]], s.vertices[v[2]] - s.vertices[v[0]]));
    }
    const double r2 = R * R - (tau - t0) * (tau - t0);
    worst = std::max(worst, std::abs(area / (4 * M_PI * r2) - 1.0));
  }
  EXPECT_LT(worst, 0.2);
  // vertex counts rise to the middle and fall after it (small lattice jitter allowed)
  const std::size_t peak = std::max_element(counts.begin(), counts.end()) - counts.begin();
  EXPECT_NEAR(static_cast<double>(peak), 49.5, 8.0);
  EXPECT_LT(counts.front(), counts[peak] / 2);
  EXPECT_LT(counts.back(), counts[peak] / 2);
}

TEST(SliceReport, DetectsHoles) {
  TriMesh3 s = slice(single_toxel_mesh(), 1.0);
  s.triangles.pop_back();
  const SliceReport r = check_slice(s);
  EXPECT_FALSE(r.closed());
  EXPECT_EQ(r.boundary_edges, 3u);
}
