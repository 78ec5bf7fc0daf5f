#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace llgs {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  constexpr bool operator==(const Vec3&) const = default;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& at(int i) { return i == 0 ? x : (i == 1 ? y : z); }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double norm2() const { return x * x + y * y + z * z; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Vec3 normalized(const Vec3& v) {
  const double n = v.norm();
  if (n == 0.0) throw std::domain_error("normalized: zero vector");
  return v / n;
}

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> a{};

  static constexpr Mat3 zero() { return {}; }
  static constexpr Mat3 identity() {
    Mat3 m;
    m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }
  static constexpr Mat3 diag(const Vec3& d) {
    Mat3 m;
    m.a = {d.x, 0, 0, 0, d.y, 0, 0, 0, d.z};
    return m;
  }

  constexpr double operator()(int i, int j) const { return a[3 * i + j]; }
  double& operator()(int i, int j) { return a[3 * i + j]; }

  constexpr Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  constexpr Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  constexpr Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = a[i] * s;
    return r;
  }
  constexpr Vec3 operator*(const Vec3& v) const {
    return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
            a[3] * v.x + a[4] * v.y + a[5] * v.z,
            a[6] * v.x + a[7] * v.y + a[8] * v.z};
  }
  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
    return r;
  }
  constexpr Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
  }
};

constexpr Mat3 operator*(double s, const Mat3& m) { return m * s; }

// a x b == skew(a) * b
constexpr Mat3 skew(const Vec3& v) {
  Mat3 m;
  m.a = {0, -v.z, v.y, v.z, 0, -v.x, -v.y, v.x, 0};
  return m;
}

constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 m;
  m.a = {a.x * b.x, a.x * b.y, a.x * b.z,
         a.y * b.x, a.y * b.y, a.y * b.z,
         a.z * b.x, a.z * b.y, a.z * b.z};
  return m;
}

// Solve A x = b by Gaussian elimination with partial pivoting.
inline Vec3 solve3(const Mat3& A, const Vec3& b) {
  double m[3][4] = {{A(0, 0), A(0, 1), A(0, 2), b.x},
                    {A(1, 0), A(1, 1), A(1, 2), b.y},
                    {A(2, 0), A(2, 1), A(2, 2), b.z}};
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    if (m[p][c] == 0.0) throw std::runtime_error("solve3: singular matrix");
    if (p != c)
      for (int k = c; k < 4; ++k) std::swap(m[p][k], m[c][k]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  Vec3 x;
  x.z = m[2][3] / m[2][2];
  x.y = (m[1][3] - m[1][2] * x.z) / m[1][1];
  x.x = (m[0][3] - m[0][1] * x.y - m[0][2] * x.z) / m[0][0];
  return x;
}

// Local orthogonal unit vectors along increasing theta and phi.
inline std::pair<Vec3, Vec3> spherical_basis(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  return {Vec3{ct * cp, ct * sp, -st}, Vec3{-sp, cp, 0.0}};
}

// Polar angle from +z, azimuth from +x. Convention: phi = 0 on the poles.
inline std::pair<double, double> to_spherical(const Vec3& m) {
  const double r = m.norm();
  if (r == 0.0) throw std::domain_error("to_spherical: zero vector");
  const double rho = std::sqrt(m.x * m.x + m.y * m.y);
  const double theta = std::atan2(rho, m.z);
  const double phi = (rho == 0.0) ? 0.0 : std::atan2(m.y, m.x);
  return {theta, phi};
}

inline Vec3 to_cartesian(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

}  // namespace llgs
