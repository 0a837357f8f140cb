#pragma once

#include <cmath>
#include <vector>

#include "covtrans/core.hpp"
#include "covtrans/groups.hpp"
#include "covtrans/matrix.hpp"
#include "covtrans/signal.hpp"

namespace covtrans {

// All appliers below take the coordinate pair / matrix that appears inside
// the dilation formula itself. Composing two applications multiplies those
// pairs in reversed order, so the single inversion needed anywhere lives in
// the transform drivers, not here.

/// Which concrete representation acts, plus its exponent where relevant.
struct ReprSpec {
  enum class Kind { AffineP, Sl2Line, Sl2HalfPlane, UnitaryMatrix };
  Kind kind = Kind::AffineP;
  double p = 2.0;  // exponent for AffineP; may be infinity
};

inline ReprSpec affine_repr(double p) {
  require(p >= 1.0, "affine_repr: p must be >= 1 (or infinity)");
  return {ReprSpec::Kind::AffineP, p};
}

inline double dilation_prefactor(double a, double p) {
  require(a > 0.0, "dilation_prefactor: scale must be positive");
  if (std::isinf(p)) return 1.0;
  return std::pow(a, 1.0 / p);
}

/// Result of resampling a signal through a group action, with the fraction of
/// L^2 mass that fell outside the sampled window attached as a diagnostic.
struct ResampleResult {
  SignalGrid signal;
  double mass_loss_fraction = 0.0;
};

/// x |-> a^{1/p} f(a x + b), resampled onto f's own grid (pair = (a, b) as it
/// appears in the formula; a^{1/p} reads as 1 for p = infinity).
inline ResampleResult affine_rep_apply_ex(double p, const AffinePoint& pair,
                                          const SignalGrid& f) {
  check_affine(pair, "affine_rep_apply");
  check_signal(f, "affine_rep_apply");
  const double pref = dilation_prefactor(pair.a, p);
  SignalGrid out;
  out.x0 = f.x0;
  out.dx = f.dx;
  out.values.assign(f.values.size(), Complex{0.0, 0.0});
  // Nonzero only where a x + b lands inside f's window.
  const double lo = (f.x0 - pair.b) / pair.a;
  const double hi = (f.x_end() - pair.b) / pair.a;
  const long k0 = std::max<long>(0, static_cast<long>(std::ceil((lo - f.x0) / f.dx)));
  const long k1 = std::min<long>(static_cast<long>(f.values.size()) - 1,
                                 static_cast<long>(std::floor((hi - f.x0) / f.dx)));
  for (long k = k0; k <= k1; ++k)
    out.values[static_cast<std::size_t>(k)] =
        pref * interpolate_eval(f, pair.a * out.x(static_cast<std::size_t>(k)) + pair.b);

  // ||a^{1/p} f(a . + b)||_2^2 over the full line equals a^{2/p - 1} ||f||_2^2.
  double captured = 0.0;
  for (const auto& v : out.values) captured += std::norm(v);
  captured *= out.dx;
  double total = 0.0;
  for (const auto& v : f.values) total += std::norm(v);
  total *= f.dx;
  const double expected = (std::isinf(p) ? 1.0 / pair.a : std::pow(pair.a, 2.0 / p - 1.0)) * total;
  ResampleResult r;
  r.signal = std::move(out);
  r.mass_loss_fraction = expected > 0.0 ? std::max(0.0, 1.0 - captured / expected) : 0.0;
  return r;
}

inline SignalGrid affine_rep_apply(double p, const AffinePoint& pair, const SignalGrid& f) {
  return affine_rep_apply_ex(p, pair, f).signal;
}

/// Line action x |-> (c x + d)^{-1} f((a x + b) / (c x + d)) for the formula
/// matrix (a b; c d). Samples within 1e-8 of the kernel pole are zeroed and
/// counted.
struct LineRepResult {
  SignalGrid signal;
  std::size_t pole_nodes = 0;
};

inline LineRepResult sl2_line_rep_apply(const Sl2Element& m, const SignalGrid& f) {
  check_signal(f, "sl2_line_rep_apply");
  LineRepResult r;
  r.signal.x0 = f.x0;
  r.signal.dx = f.dx;
  r.signal.values.assign(f.values.size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const double x = f.x(k);
    const double den = m.c * x + m.d;
    if (std::abs(den) < 1e-8) {
      ++r.pole_nodes;
      continue;
    }
    const double arg = (m.a * x + m.b) / den;
    r.signal.values[k] = interpolate_eval(f, arg) / den;
  }
  return r;
}

/// Half-plane action z |-> (c z + d)^{-2} F((a z + b)/(c z + d)) for the
/// formula matrix; bilinear reads in (log a, b), zero off the window.
inline HalfPlaneField sl2_halfplane_rep_apply(const Sl2Element& m, const HalfPlaneField& F) {
  require(F.aGrid.size() >= 2 && F.bGrid.size() >= 2, "sl2_halfplane_rep_apply: bad field");
  HalfPlaneField out;
  out.aGrid = F.aGrid;
  out.bGrid = F.bGrid;
  out.values.assign(F.values.size(), Complex{0.0, 0.0});
  for (std::size_t ia = 0; ia < F.aGrid.size(); ++ia)
    for (std::size_t ib = 0; ib < F.bGrid.size(); ++ib) {
      const Complex z{F.bGrid[ib], F.aGrid[ia]};
      const Complex den = m.c * z + m.d;
      const Complex w = (m.a * z + m.b) / den;
      out.values[ia * F.bGrid.size() + ib] = half_plane_eval(F, w) / (den * den);
    }
  return out;
}

/// Associated action on operators: A |-> A * rho(g^{-1}), where the caller
/// hands the matrix of rho(g^{-1}) directly.
inline ComplexMatrix operator_rep_apply(const ComplexMatrix& rho_of_g_inverse,
                                        const ComplexMatrix& A) {
  require(rho_of_g_inverse.dim() == A.dim(), "operator_rep_apply: dimension mismatch");
  return A * rho_of_g_inverse;
}

/// Disk automorphism acting on a strict contraction:
/// T |-> (alpha T + beta I) (conj(beta) T + conj(alpha) I)^{-1}.
/// Declared in terms of the element's own entries; preserves the open unit
/// spectral-radius ball.
double spectral_radius_gelfand(const ComplexMatrix& T, bool* converged = nullptr);

inline ComplexMatrix mobius_on_operator(const Su11Element& g, const ComplexMatrix& T) {
  require(T.dim() >= 1 && T.all_finite(), "mobius_on_operator: bad matrix");
  const double sr = spectral_radius_gelfand(T);
  require(sr < 1.0 + 1e-10, "mobius_on_operator: spectral radius must be < 1");
  const ComplexMatrix eye = ComplexMatrix::identity(T.dim());
  const ComplexMatrix num = g.alpha * T + g.beta * eye;
  const ComplexMatrix den = std::conj(g.beta) * T + std::conj(g.alpha) * eye;
  ComplexMatrix out = num * inverse(den);
  const double sr_out = spectral_radius_gelfand(out);
  if (!(sr_out < 1.0 + 1e-8))
    throw NumericalError("mobius_on_operator: image left the spectral-radius ball");
  return out;
}

/// Gelfand estimate ||T^{2^k}||_2^{1/2^k}, squared repeatedly with rescaling,
/// stopped at relative change < 1e-6 or k = 24.
inline double spectral_radius_gelfand(const ComplexMatrix& T, bool* converged) {
  require(T.dim() >= 1, "spectral_radius_gelfand: empty matrix");
  if (converged) *converged = true;
  ComplexMatrix b = T;
  double norm = operator_norm_2(b);
  if (norm == 0.0) return 0.0;
  double log_est = std::log(norm);  // log ||T^{2^k}|| / 2^k
  double est = norm;
  b = (Complex{1.0 / norm, 0.0}) * b;
  double log_scale = std::log(norm);  // T^{2^k} = b * exp(log_scale)
  for (int k = 1; k <= 24; ++k) {
    b = b * b;
    log_scale *= 2.0;
    const double s = operator_norm_2(b);
    if (s == 0.0) return 0.0;  // nilpotent
    log_scale += std::log(s);
    b = (Complex{1.0 / s, 0.0}) * b;
    const double prev = est;
    log_est = log_scale / std::pow(2.0, k);
    est = std::exp(log_est);
    if (std::abs(est - prev) <= 1e-6 * std::max(est, 1e-300)) {
      if (converged) *converged = true;
      return est;
    }
  }
  if (converged) *converged = false;
  return est;
}

}  // namespace covtrans
