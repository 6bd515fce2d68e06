#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace steve {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

template <std::size_t N>
constexpr std::array<double, N> operator+(const std::array<double, N>& a,
                                          const std::array<double, N>& b) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
constexpr std::array<double, N> operator-(const std::array<double, N>& a,
                                          const std::array<double, N>& b) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
constexpr std::array<double, N> operator*(double s, const std::array<double, N>& a) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <std::size_t N>
constexpr double dot(const std::array<double, N>& a, const std::array<double, N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
inline double norm(const std::array<double, N>& a) {
  return std::sqrt(dot(a, a));
}

/// a + t (b - a), evaluated in the same order everywhere so shared points agree bitwise.
template <std::size_t N>
constexpr std::array<double, N> lerp(const std::array<double, N>& a,
                                     const std::array<double, N>& b, double t) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

constexpr double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot(a, cross(b, c));
}

/// Generalized cross product: the vector n with n . w == det[u; v; w'; w] for
/// every w, i.e. orthogonal to u, v and w' and oriented by their order.
constexpr Vec4 cross4(const Vec4& u, const Vec4& v, const Vec4& w) {
  auto minor = [&](int skip) {
    Vec3 a{}, b{}, c{};
    for (int i = 0, k = 0; i < 4; ++i) {
      if (i == skip) continue;
      a[k] = u[i];
      b[k] = v[i];
      c[k] = w[i];
      ++k;
    }
    return det3(a, b, c);
  };
  // Cofactors along the last row of [u; v; w; e_i].
  return {-minor(0), minor(1), -minor(2), minor(3)};
}

constexpr double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  return dot(cross4(a, b, c), d);
}

}  // namespace steve
