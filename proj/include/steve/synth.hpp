#pragma once

// Synthetic 4D test volumes with known geometry.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "steve/error.hpp"
#include "steve/field.hpp"
#include "steve/vec.hpp"

namespace steve {

enum class SynthShape { Hypersphere, Dumbbell, SingleToxel, IsoSlab };

/// Two balls joined by a capsule-shaped neck whose radius shrinks linearly and
/// vanishes at t = pinch. Positive inside; isovalue 0 separates.
struct DumbbellParams {
  Vec4 center{15.5, 8, 8, 0};  // midpoint between the balls (t ignored)
  double half_distance = 7.0;  // ball center offset along x at t = 0
  double drift = 0.0;          // growth of half_distance per unit time
  double radius = 4.0;         // ball radius
  double neck_radius = 2.0;    // neck radius at t = 0
  double pinch = 6.5;          // time at which the neck radius reaches 0
};

struct SynthSpec {
  SynthShape shape = SynthShape::Hypersphere;
  Dims4 dims{24, 24, 24, 24};
  Vec4 center{11.5, 11.5, 11.5, 11.5};  // HYPERSPHERE
  double radius = 8.0;                  // HYPERSPHERE
  Lattice4 index{1, 1, 1, 1};           // SINGLE_TOXEL
  double split = 0.5;                   // ISO_SLAB: active for t <= split
  DumbbellParams dumbbell;
};

namespace detail {

template <class Fn>
ToxelField sample(const Dims4& dims, Fn fn) {
  std::size_t n = 1;
  for (int d : dims) {
    if (d <= 0) fail(ErrorKind::Usage, "synthetic grid dimensions must be positive");
    n *= static_cast<std::size_t>(d);
  }
  std::vector<double> v(n);
  std::size_t i = 0;
  for (int t = 0; t < dims[3]; ++t)
    for (int z = 0; z < dims[2]; ++z)
      for (int y = 0; y < dims[1]; ++y)
        for (int x = 0; x < dims[0]; ++x) v[i++] = fn(Vec4{double(x), double(y), double(z), double(t)});
  return ToxelField(dims, std::move(v));
}

inline bool inside_grid(const Dims4& dims, const Vec4& p) {
  for (int a = 0; a < 4; ++a) {
    if (!(p[a] >= 0.0 && p[a] <= dims[a] - 1)) return false;
  }
  return true;
}

inline double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  const double s = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - lerp(a, b, s));
}

}  // namespace detail

/// Scalar R - |p - c|: active inside the ball of radius R at isovalue 0.
inline ToxelField synth_hypersphere(const Dims4& dims, const Vec4& center, double radius) {
  if (!(radius > 0.0)) fail(ErrorKind::Usage, "hypersphere radius must be positive");
  if (!detail::inside_grid(dims, center)) fail(ErrorKind::Usage, "hypersphere center lies outside the grid");
  return detail::sample(dims, [&](const Vec4& p) { return radius - norm(p - center); });
}

/// Indicator of one toxel (1 there, 0 elsewhere); extract with 0 < isovalue <= 1.
inline ToxelField synth_single_toxel(const Dims4& dims, const Lattice4& index) {
  for (int a = 0; a < 4; ++a) {
    if (index[a] < 0 || index[a] >= dims[a]) fail(ErrorKind::Usage, "toxel index lies outside the grid");
  }
  const Vec4 c{double(index[0]), double(index[1]), double(index[2]), double(index[3])};
  return detail::sample(dims, [&](const Vec4& p) { return p == c ? 1.0 : 0.0; });
}

/// Scalar split - t: every toxel with t <= split is active at isovalue 0.
inline ToxelField synth_iso_slab(const Dims4& dims, double split) {
  if (!(split >= 0.0 && split <= dims[3] - 1)) fail(ErrorKind::Usage, "slab split lies outside the time range");
  return detail::sample(dims, [&](const Vec4& p) { return split - p[3]; });
}

/// max(ball 1, ball 2, neck): one component while the neck radius is positive,
/// two afterwards.
inline ToxelField synth_dumbbell(const Dims4& dims, const DumbbellParams& d) {
  if (!(d.radius > 0.0) || !(d.neck_radius > 0.0) || !(d.pinch > 0.0)) {
    fail(ErrorKind::Usage, "dumbbell radii and pinch time must be positive");
  }
  const double far = d.half_distance + d.drift * (dims[3] - 1);
  for (double s : {-1.0, 1.0}) {
    for (double h : {d.half_distance, far}) {
      const Vec4 c{d.center[0] + s * h, d.center[1], d.center[2], 0.0};
      for (int a = 0; a < 3; ++a) {
        if (c[a] - d.radius < 0.0 || c[a] + d.radius > dims[a] - 1) {
          fail(ErrorKind::Usage, "dumbbell ball does not fit inside the grid");
        }
      }
    }
  }
  if (d.half_distance <= d.radius) fail(ErrorKind::Usage, "dumbbell balls overlap");
  return detail::sample(dims, [&](const Vec4& p) {
    const double h = d.half_distance + d.drift * p[3];
    const Vec3 q{p[0], p[1], p[2]};
    const Vec3 a{d.center[0] - h, d.center[1], d.center[2]};
    const Vec3 b{d.center[0] + h, d.center[1], d.center[2]};
    const double balls = std::max(d.radius - norm(q - a), d.radius - norm(q - b));
    const double rho = d.neck_radius * (d.pinch - p[3]) / d.pinch;
    return std::max(balls, rho - detail::segment_distance(q, a, b));
  });
}

inline ToxelField synth(const SynthSpec& s) {
  switch (s.shape) {
    case SynthShape::Hypersphere: return synth_hypersphere(s.dims, s.center, s.radius);
    case SynthShape::SingleToxel: return synth_single_toxel(s.dims, s.index);
    case SynthShape::IsoSlab: return synth_iso_slab(s.dims, s.split);
    case SynthShape::Dumbbell: return synth_dumbbell(s.dims, s.dumbbell);
  }
  fail(ErrorKind::Usage, "unknown synthetic shape");
}

}  // namespace steve
