#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "covtrans/core.hpp"
#include "covtrans/repr.hpp"
#include "covtrans/signal.hpp"
#include "covtrans/xform.hpp"

namespace covtrans {

/// Invariant pairings on chart fields.
struct PairingSpec {
  enum class Kind { Haar, Hardy };
  Kind kind = Kind::Haar;
  std::vector<double> aSequence;  // Hardy: strictly decreasing, grid scales

  static PairingSpec haar() { return {Kind::Haar, {}}; }
  static PairingSpec hardy(std::vector<double> seq) { return {Kind::Hardy, std::move(seq)}; }
};

namespace detail {

inline void check_same_grid(const TransformField& F1, const TransformField& F2) {
  require(F1.grid.na() == F2.grid.na() && F1.grid.nb() == F2.grid.nb(),
          "pairing: grid shape mismatch");
  for (std::size_t i = 0; i < F1.grid.na(); ++i)
    require(nearly_equal(F1.grid.aValues[i], F2.grid.aValues[i],
                         1e-12 * std::abs(F1.grid.aValues[i])),
            "pairing: scale grids differ");
  require(nearly_equal(F1.grid.bValues.front(), F2.grid.bValues.front(), 1e-12) &&
              nearly_equal(F1.grid.bValues.back(), F2.grid.bValues.back(), 1e-9),
          "pairing: translation grids differ");
}

inline std::size_t find_scale_row(const AffineGrid& g, double a) {
  for (std::size_t ia = 0; ia < g.na(); ++ia)
    if (std::abs(g.aValues[ia] - a) <= 1e-9 * a) return ia;
  throw PreconditionError("pairing: requested scale is not a grid row");
}

/// Integral over b of row ia of F1 * conj(F2), by the signal quadrature.
inline Complex row_pairing(const TransformField& F1, const TransformField& F2,
                           std::size_t ia) {
  SignalGrid row;
  row.x0 = F1.grid.bValues.front();
  row.dx = F1.grid.b_step();
  row.values.resize(F1.grid.nb());
  for (std::size_t ib = 0; ib < F1.grid.nb(); ++ib)
    row.values[ib] = F1.at(ia, ib) * std::conj(F2.at(ia, ib));
  return quadrature_integral(row);
}

}  // namespace detail

/// Group-measure pairing: trapezoid in log a (weight 1/a after the Jacobian)
/// times trapezoid in b of F1 * conj(F2).
inline Complex haar_pairing(const TransformField& F1, const TransformField& F2) {
  detail::check_same_grid(F1, F2);
  const auto& g = F1.grid;
  require(g.na() >= 2 && g.nb() >= 2, "haar_pairing: degenerate grid");
  const double dla = g.log_step();
  const double db = g.b_step();
  Complex acc{0.0, 0.0};
  for (std::size_t ia = 0; ia < g.na(); ++ia) {
    const double wa = (ia == 0 || ia + 1 == g.na()) ? 0.5 : 1.0;
    Complex rowacc{0.0, 0.0};
    for (std::size_t ib = 0; ib < g.nb(); ++ib) {
      const double wb = (ib == 0 || ib + 1 == g.nb()) ? 0.5 : 1.0;
      rowacc += wb * F1.at(ia, ib) * std::conj(F2.at(ia, ib));
    }
    acc += wa * rowacc / g.aValues[ia];
  }
  return acc * dla * db;
}

struct HardyLimit {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool differences_decreasing = true;
};

/// Boundary pairing lim_{a -> 0} of the per-row b-integrals, realized by a
/// linear fit through the two smallest sampled scales. The error estimate is
/// the gap between the smallest-scale row integral and the extrapolant.
inline HardyLimit hardy_pairing_ex(const TransformField& F1, const TransformField& F2,
                                   const PairingSpec& spec) {
  require(spec.kind == PairingSpec::Kind::Hardy, "hardy_pairing: wrong pairing kind");
  require(spec.aSequence.size() >= 3, "hardy_pairing: need at least three scales");
  detail::check_same_grid(F1, F2);
  std::vector<double> seq = spec.aSequence;
  for (std::size_t i = 1; i < seq.size(); ++i)
    require(seq[i] < seq[i - 1], "hardy_pairing: scale sequence must strictly decrease");
  std::vector<Complex> I(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    I[i] = detail::row_pairing(F1, F2, detail::find_scale_row(F1.grid, seq[i]));
  HardyLimit out;
  for (std::size_t i = 2; i < seq.size(); ++i)
    if (std::abs(I[i] - I[i - 1]) > std::abs(I[i - 1] - I[i - 2]) + 1e-14)
      out.differences_decreasing = false;
  const double a1 = seq[seq.size() - 1];
  const double a2 = seq[seq.size() - 2];
  const Complex i1 = I[seq.size() - 1];
  const Complex i2 = I[seq.size() - 2];
  out.value = (a2 * i1 - a1 * i2) / (a2 - a1);
  out.error_estimate = std::abs(i1 - out.value);
  return out;
}

inline Complex hardy_pairing(const TransformField& F1, const TransformField& F2,
                             const PairingSpec& spec) {
  return hardy_pairing_ex(F1, F2, spec).value;
}

/// Scalar field F+ - F- out of a pair-valued transform.
inline TransformField jump_combine(const TransformField& W) {
  require(W.uDim == 2, "jump_combine: field must carry both analytic components");
  TransformField out = W;
  out.uDim = 1;
  out.fiducial = FiducialSpec::Kind::Poisson;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] -= W.values2[k];
  out.values2.clear();
  return out;
}

/// Reconstruction by pairing a field against the moved-vector family
/// w(a, b) = a^{-1/p} v0((x - b)/a), pointwise in the output variable x.
/// The synthesis exponent comes from `rho`; fields with a different analysis
/// exponent are permitted, and the homogeneity-balanced choice pairs a
/// p = infinity field with a p = 1 family.
inline SignalGrid inverse_covariant_transform(const TransformField& Fhat, const ReprSpec& rho,
                                              const SignalGrid& v0, const PairingSpec& spec,
                                              const SignalGrid* output_grid = nullptr) {
  require(Fhat.uDim == 1, "inverse_covariant_transform: combine pair fields first");
  require(rho.kind == ReprSpec::Kind::AffineP, "inverse_covariant_transform: affine family");
  check_signal(v0, "inverse_covariant_transform");
  const SignalGrid& shape = output_grid ? *output_grid : v0;
  SignalGrid out;
  out.x0 = shape.x0;
  out.dx = shape.dx;
  out.values.assign(shape.values.size(), Complex{0.0, 0.0});

  const auto& g = Fhat.grid;
  const double db = g.b_step();
  const double dla = g.log_step();

  std::vector<std::size_t> rows;
  if (spec.kind == PairingSpec::Kind::Hardy) {
    require(spec.aSequence.size() >= 3, "inverse_covariant_transform: short scale sequence");
    for (double a : spec.aSequence) rows.push_back(detail::find_scale_row(g, a));
  }

  parallel_for(out.values.size(), worker_count(), [&](std::size_t kx) {
    const double x = out.x(kx);
    const auto w_value = [&](std::size_t ia, std::size_t ib) {
      const double a = g.aValues[ia];
      const double b = g.bValues[ib];
      return dilation_prefactor(1.0 / a, rho.p) * interpolate_eval(v0, (x - b) / a);
    };
    const auto row_integral = [&](std::size_t ia) {
      SignalGrid row;
      row.x0 = g.bValues.front();
      row.dx = db;
      row.values.resize(g.nb());
      for (std::size_t ib = 0; ib < g.nb(); ++ib)
        row.values[ib] = Fhat.at(ia, ib) * std::conj(w_value(ia, ib));
      return quadrature_integral(row);
    };
    if (spec.kind == PairingSpec::Kind::Hardy) {
      const std::size_t nrow = rows.size();
      const double a1 = spec.aSequence[nrow - 1];
      const double a2 = spec.aSequence[nrow - 2];
      const Complex i1 = row_integral(rows[nrow - 1]);
      const Complex i2 = row_integral(rows[nrow - 2]);
      out.values[kx] = (a2 * i1 - a1 * i2) / (a2 - a1);
    } else {
      Complex acc{0.0, 0.0};
      for (std::size_t ia = 0; ia < g.na(); ++ia) {
        const double wa = (ia == 0 || ia + 1 == g.na()) ? 0.5 : 1.0;
        acc += wa * row_integral(ia) / g.aValues[ia];
      }
      out.values[kx] = acc * dla;
    }
  });
  return out;
}

/// Relative L^2 gap between the level-a boundary combination
/// f+(b + i a) - f-(b - i a) and the signal itself, measured over the
/// b-range [-bmax, bmax] of f's own nodes. First order in a.
inline double jump_reconstruction_defect(const SignalGrid& f, double a, double bmax = 24.0) {
  check_signal(f, "jump_reconstruction_defect");
  require(a > 0.0, "jump_reconstruction_defect: level must be positive");
  const auto k_lo = static_cast<std::size_t>(std::ceil((-bmax - f.x0) / f.dx - 1e-12));
  const auto k_hi_d = std::floor((bmax - f.x0) / f.dx + 1e-12);
  require(k_hi_d >= 0.0, "jump_reconstruction_defect: empty comparison range");
  const auto k_hi = std::min<std::size_t>(f.values.size() - 1,
                                          static_cast<std::size_t>(k_hi_d));
  require(k_hi > k_lo + 2, "jump_reconstruction_defect: comparison range too small");

  const double p = 2.0;  // the prefactor a^{1/p} cancels below
  const double pref = dilation_prefactor(a, p);
  std::vector<Complex> diff(k_hi - k_lo + 1);
  std::vector<double> fref(k_hi - k_lo + 1);
  parallel_for(diff.size(), worker_count(), [&](std::size_t i) {
    const std::size_t k = k_lo + i;
    const AffinePoint c{a, f.x(k)};
    const SignalGrid moved = affine_rep_apply(p, c, f);
    const Complex plus = cauchy_integral(moved, Complex{0.0, 1.0}) / pref;
    const Complex minus = cauchy_integral(moved, Complex{0.0, -1.0}) / pref;
    diff[i] = plus - minus - f.values[k];
    fref[i] = std::abs(f.values[k]);
  });
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    num += std::norm(diff[i]);
    den += fref[i] * fref[i];
  }
  require(den > 0.0, "jump_reconstruction_defect: signal vanishes on the range");
  return std::sqrt(num / den);
}

}  // namespace covtrans
