#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "covtrans/core.hpp"

namespace covtrans {

// ---------------------------------------------------------------------------
// Affine ("ax+b") group
// ---------------------------------------------------------------------------

/// Point (a, b) of the affine group, a > 0.
/// Law: (a, b) * (a', b') = (a a', a b' + b); identity (1, 0); the left Haar
/// measure has density a^{-2} da db.
struct AffinePoint {
  double a = 1.0;
  double b = 0.0;
};

inline AffinePoint affine_identity() { return {1.0, 0.0}; }

inline void check_affine(const AffinePoint& g, const char* who) {
  require(std::isfinite(g.a) && std::isfinite(g.b) && g.a > 0.0,
          std::string(who) + ": affine point needs finite fields and a > 0");
}

inline AffinePoint affine_compose(const AffinePoint& g, const AffinePoint& h) {
  check_affine(g, "affine_compose");
  check_affine(h, "affine_compose");
  return {g.a * h.a, g.a * h.b + g.b};
}

inline AffinePoint affine_inverse(const AffinePoint& g) {
  check_affine(g, "affine_inverse");
  return {1.0 / g.a, -g.b / g.a};
}

/// Density a^{-2} of the left invariant measure.
inline double affine_haar_weight(double a) {
  require(std::isfinite(a) && a > 0.0, "affine_haar_weight: scale must be positive");
  return 1.0 / (a * a);
}

// ---------------------------------------------------------------------------
// SL(2, R)
// ---------------------------------------------------------------------------

/// Real 2x2 matrix (a b; c d) with det = 1, renormalized after every product
/// so the determinant cannot drift over long words.
struct Sl2Element {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
};

inline Sl2Element sl2_identity() { return {}; }

inline Sl2Element sl2_renormalize(Sl2Element m) {
  const double det = m.det();
  require(std::isfinite(det) && det > 0.0, "sl2: determinant must stay positive");
  const double s = 1.0 / std::sqrt(det);
  return {m.a * s, m.b * s, m.c * s, m.d * s};
}

inline Sl2Element make_sl2(double a, double b, double c, double d) {
  return sl2_renormalize({a, b, c, d});
}

inline Sl2Element sl2_compose(const Sl2Element& g, const Sl2Element& h) {
  Sl2Element m{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
               g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
  return sl2_renormalize(m);
}

inline Sl2Element sl2_inverse(const Sl2Element& g) {
  return sl2_renormalize({g.d, -g.b, -g.c, g.a});
}

/// Rotation subgroup element (cos t, sin t; -sin t, cos t).
inline Sl2Element sl2_rotation(double t) {
  return {std::cos(t), std::sin(t), -std::sin(t), std::cos(t)};
}

// ---------------------------------------------------------------------------
// SU(1, 1)
// ---------------------------------------------------------------------------

/// Matrix (alpha beta; conj(beta) conj(alpha)) with |alpha|^2 - |beta|^2 = 1.
struct Su11Element {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
};

inline double su11_defect(const Su11Element& g) {
  return std::norm(g.alpha) - std::norm(g.beta) - 1.0;
}

inline Su11Element su11_renormalize(Su11Element g) {
  const double d = std::norm(g.alpha) - std::norm(g.beta);
  require(std::isfinite(d) && d > 0.0, "su11: |alpha|^2 - |beta|^2 must be positive");
  const double s = 1.0 / std::sqrt(d);
  return {g.alpha * s, g.beta * s};
}

inline Su11Element su11_identity() { return {}; }

inline Su11Element su11_compose(const Su11Element& g, const Su11Element& h) {
  Su11Element m{g.alpha * h.alpha + g.beta * std::conj(h.beta),
                g.alpha * h.beta + g.beta * std::conj(h.alpha)};
  return su11_renormalize(m);
}

inline Su11Element su11_inverse(const Su11Element& g) {
  return su11_renormalize({std::conj(g.alpha), -g.beta});
}

/// Element diag(e^{i phi/2}, e^{-i phi/2}) * (1 -z; -conj z 1), scaled by
/// 1/sqrt(1 - |z|^2) so the SU(1,1) determinant constraint holds. The second
/// factor alone has determinant 1 - |z|^2; the induced disk automorphism is
/// projective so the scaling changes nothing downstream.
inline Su11Element su11_from_phi_z(double phi, Complex z) {
  require(std::abs(z) < 1.0, "su11_from_phi_z: |z| must be < 1");
  const double s = 1.0 / std::sqrt(1.0 - std::norm(z));
  const Complex half = std::polar(1.0, phi / 2.0);
  return {half * s, -z * half * s};
}

// ---------------------------------------------------------------------------
// SE(2), rotation-then-translation convention
// ---------------------------------------------------------------------------

struct Se2Element {
  double theta = 0.0;  // normalized to (-pi, pi]
  double tx = 0.0;
  double ty = 0.0;
};

inline double normalize_angle(double t) {
  t = std::fmod(t, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  if (t > kPi) t -= 2.0 * kPi;
  return t;
}

inline Se2Element make_se2(double theta, double tx, double ty) {
  require(std::isfinite(theta) && std::isfinite(tx) && std::isfinite(ty),
          "make_se2: fields must be finite");
  return {normalize_angle(theta), tx, ty};
}

inline Se2Element se2_identity() { return {}; }

/// Apply g to a point: rotate by theta, then translate.
inline std::array<double, 2> se2_apply(const Se2Element& g, std::array<double, 2> p) {
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  return {c * p[0] - s * p[1] + g.tx, s * p[0] + c * p[1] + g.ty};
}

inline Se2Element se2_compose(const Se2Element& g, const Se2Element& h) {
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  return make_se2(g.theta + h.theta, g.tx + c * h.tx - s * h.ty, g.ty + s * h.tx + c * h.ty);
}

inline Se2Element se2_inverse(const Se2Element& g) {
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  return make_se2(-g.theta, -(c * g.tx + s * g.ty), -(-s * g.tx + c * g.ty));
}

// ---------------------------------------------------------------------------
// Discretized affine chart: log-spaced scales x uniform translations
// ---------------------------------------------------------------------------

struct AffineGrid {
  std::vector<double> aValues;  // strictly increasing, constant ratio
  std::vector<double> bValues;  // strictly increasing, constant step

  std::size_t na() const { return aValues.size(); }
  std::size_t nb() const { return bValues.size(); }
  double log_step() const {
    return aValues.size() > 1 ? std::log(aValues[1] / aValues[0]) : 0.0;
  }
  double b_step() const { return bValues.size() > 1 ? bValues[1] - bValues[0] : 0.0; }
};

inline AffineGrid make_affine_grid(double aMin, double aMax, std::size_t nA,
                                   double bMin, double bMax, std::size_t nB) {
  require(aMin > 0.0 && aMin < aMax, "make_affine_grid: need 0 < aMin < aMax");
  require(bMin < bMax, "make_affine_grid: need bMin < bMax");
  require(nA >= 2 && nB >= 2, "make_affine_grid: need at least two nodes per axis");
  AffineGrid g;
  g.aValues.resize(nA);
  g.bValues.resize(nB);
  const double lmin = std::log(aMin), lmax = std::log(aMax);
  for (std::size_t i = 0; i < nA; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(nA - 1);
    g.aValues[i] = std::exp(lmin + t * (lmax - lmin));
  }
  g.aValues.front() = aMin;
  g.aValues.back() = aMax;
  const double db = (bMax - bMin) / static_cast<double>(nB - 1);
  for (std::size_t j = 0; j < nB; ++j) g.bValues[j] = bMin + static_cast<double>(j) * db;
  g.bValues.back() = bMax;
  return g;
}

/// Max deviation of aValues[i+1]/aValues[i] from the leading ratio.
inline double affine_grid_ratio_defect(const AffineGrid& g) {
  if (g.na() < 3) return 0.0;
  const double r0 = g.aValues[1] / g.aValues[0];
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < g.na(); ++i)
    worst = std::max(worst, std::abs(g.aValues[i + 1] / g.aValues[i] - r0));
  return worst;
}

}  // namespace covtrans
