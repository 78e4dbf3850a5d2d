#pragma once

#include <cmath>
#include <cstdint>

#include "shadowing/errors.hpp"

namespace shadowing {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// 2x2 real matrix, row major
struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;

  Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  double det() const { return a * d - b * c; }
  Mat2 inverse() const {
    double dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 from_columns(Vec2 u, Vec2 v) { return {u.x, v.x, u.y, v.y}; }
};

// 2x2 integer matrix, row major
struct Mat2i {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  std::int64_t det() const { return a * d - b * c; }
  Mat2i operator*(const Mat2i& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const Mat2i&) const = default;
  // inverse of a matrix with det = +-1, exact in integers
  Mat2i unimodular_inverse() const {
    std::int64_t dt = det();
    require(dt == 1 || dt == -1, errc::not_unimodular, "matrix is not unimodular");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  Mat2 to_real() const { return {double(a), double(b), double(c), double(d)}; }
  Vec2 apply(Vec2 v) const {
    return {double(a) * v.x + double(b) * v.y, double(c) * v.x + double(d) * v.y};
  }
  std::int64_t trace() const { return a + d; }
  static Mat2i identity() { return {1, 0, 0, 1}; }
};

// Eigenstructure of a hyperbolic unimodular 2x2 integer matrix. Such a
// matrix always has two distinct real eigenvalues with |lambda_s| < 1 <
// |lambda_u| (a complex pair would sit on the unit circle).
struct HyperbolicEigen {
  double lambda_s = 0, lambda_u = 0;  // signed
  Vec2 v_s, v_u;                      // unit eigenvectors
  Mat2 basis;                         // columns (v_s, v_u)
  Mat2 basis_inv;                     // maps R^2 coords to (stable, unstable) coords
  double condition = 1;               // ||basis|| * ||basis_inv|| (spectral)

  Vec2 to_eigen(Vec2 v) const { return basis_inv * v; }
  Vec2 from_eigen(Vec2 c) const { return basis * c; }
};

double spectral_norm(const Mat2& m);

// Throws not_hyperbolic if an eigenvalue has modulus within tol of 1.
HyperbolicEigen hyperbolic_eigen(const Mat2i& m, double tol = 1e-9);

}  // namespace shadowing
