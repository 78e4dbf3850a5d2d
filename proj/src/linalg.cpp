#include "shadowing/linalg.hpp"

#include <algorithm>

namespace shadowing {

double spectral_norm(const Mat2& m) {
  // largest singular value of a 2x2 matrix, closed form
  double g1 = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
  double g2 = std::sqrt(std::max(0.0, g1 * g1 - 4.0 * m.det() * m.det()));
  return std::sqrt(0.5 * (g1 + g2));
}

namespace {

Vec2 eigenvector_for(const Mat2i& m, double lambda) {
  // rows of (A - lambda I) are both orthogonal complements of the
  // eigenvector; pick the numerically larger one
  Vec2 r1{double(m.a) - lambda, double(m.b)};
  Vec2 r2{double(m.c), double(m.d) - lambda};
  Vec2 v1{-r1.y, r1.x};  // kernel direction from row 1
  Vec2 v2{-r2.y, r2.x};
  Vec2 v = v1.norm() >= v2.norm() ? v1 : v2;
  double n = v.norm();
  require(n > 0, errc::not_hyperbolic, "degenerate eigenvector");
  return v * (1.0 / n);
}

}  // namespace

HyperbolicEigen hyperbolic_eigen(const Mat2i& m, double tol) {
  const double tr = double(m.trace());
  const double dt = double(m.det());
  const double disc = tr * tr - 4.0 * dt;
  if (disc <= 0.0) {
    // complex pair: modulus sqrt(|det|) = 1 for unimodular matrices
    fail(errc::not_hyperbolic, "eigenvalues are not real and distinct");
  }
  const double root = std::sqrt(disc);
  const double l1 = 0.5 * (tr + root);
  const double l2 = 0.5 * (tr - root);
  double lu = std::fabs(l1) >= std::fabs(l2) ? l1 : l2;
  double ls = dt / lu;  // more accurate than the subtractive root
  require(std::fabs(std::fabs(lu) - 1.0) > tol && std::fabs(std::fabs(ls) - 1.0) > tol,
          errc::not_hyperbolic, "eigenvalue modulus within tolerance of 1");
  require(std::fabs(lu) > 1.0 && std::fabs(ls) < 1.0, errc::not_hyperbolic,
          "no expanding/contracting pair");

  HyperbolicEigen eig;
  eig.lambda_s = ls;
  eig.lambda_u = lu;
  eig.v_s = eigenvector_for(m, ls);
  eig.v_u = eigenvector_for(m, lu);
  eig.basis = Mat2::from_columns(eig.v_s, eig.v_u);
  eig.basis_inv = eig.basis.inverse();
  eig.condition = spectral_norm(eig.basis) * spectral_norm(eig.basis_inv);
  return eig;
}

}  // namespace shadowing
