#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "covtrans/core.hpp"
#include "covtrans/fiducial.hpp"
#include "covtrans/groups.hpp"
#include "covtrans/repr.hpp"
#include "covtrans/signal.hpp"

namespace covtrans {

// Coordinate convention used throughout: a field node (a, b) stores the value
// obtained by feeding the pair (a, b) into the representation formula, i.e.
// F(a^{1/p} f(a . + b)). Under this indexing, transforming a group-translated
// signal re-reads the original field at the composed pair c0 * c, and every
// shift verifier below uses exactly that law with no further inversion.

/// U-valued function sampled on an affine chart grid.
struct TransformField {
  AffineGrid grid;
  double p = 2.0;
  FiducialSpec::Kind fiducial = FiducialSpec::Kind::CauchyPlus;
  std::size_t uDim = 1;
  std::vector<Complex> values;       // primary component, a-major layout
  std::vector<Complex> values2;      // second component when uDim == 2
  std::vector<std::uint8_t> missing; // nonzero entries mark unavailable nodes

  std::size_t index(std::size_t ia, std::size_t ib) const { return ia * grid.nb() + ib; }
  Complex at(std::size_t ia, std::size_t ib) const { return values[index(ia, ib)]; }
  Complex at2(std::size_t ia, std::size_t ib) const { return values2[index(ia, ib)]; }
  bool is_missing(std::size_t ia, std::size_t ib) const {
    return !missing.empty() && missing[index(ia, ib)] != 0;
  }
};

/// W f at every grid node: value(a, b) = F(a^{1/p} f(a . + b)).
inline TransformField covariant_transform(const ReprSpec& rho, const FiducialSpec& F,
                                          const SignalGrid& f, const AffineGrid& grid) {
  require(rho.kind == ReprSpec::Kind::AffineP || rho.kind == ReprSpec::Kind::Sl2Line,
          "covariant_transform: representation must act on the affine chart");
  require(F.kind != FiducialSpec::Kind::LittlewoodPaley &&
              F.kind != FiducialSpec::Kind::RadonLine,
          "covariant_transform: fiducial must be pointwise on the chart");
  check_signal(f, "covariant_transform");
  const double p = rho.p;
  TransformField out;
  out.grid = grid;
  out.p = p;
  out.fiducial = F.kind;
  out.uDim = F.u_dim();
  out.values.resize(grid.na() * grid.nb());
  if (out.uDim == 2) out.values2.resize(out.values.size());

  parallel_for(out.values.size(), worker_count(), [&](std::size_t idx) {
    const std::size_t ia = idx / grid.nb();
    const std::size_t ib = idx % grid.nb();
    const AffinePoint c{grid.aValues[ia], grid.bValues[ib]};
    if (F.kind == FiducialSpec::Kind::Maximal) {
      // The window functional only reads [-1, 1]; resampling the rest of the
      // line would not change the value.
      const double pref = dilation_prefactor(c.a, p);
      SignalGrid win;
      const auto k_lo = static_cast<std::size_t>(std::ceil((-1.0 - f.x0) / f.dx - 1e-12));
      const auto k_hi = static_cast<std::size_t>(std::floor((1.0 - f.x0) / f.dx + 1e-12));
      require(f.x0 <= -1.0 && f.x_end() >= 1.0, "covariant_transform: grid must cover [-1,1]");
      win.x0 = f.x(k_lo);
      win.dx = f.dx;
      win.values.resize(k_hi - k_lo + 1);
      for (std::size_t k = 0; k < win.values.size(); ++k)
        win.values[k] = pref * interpolate_eval(f, c.a * win.x(k) + c.b);
      out.values[idx] = Complex{detail::windowed_mean_abs(win), 0.0};
      return;
    }
    const SignalGrid moved = affine_rep_apply(p, c, f);
    const UValue u = eval_fiducial(F, moved);
    if (out.uDim == 2) {
      const auto pr = u_pair(u);
      out.values[idx] = pr[0];
      out.values2[idx] = pr[1];
    } else if (std::holds_alternative<double>(u)) {
      out.values[idx] = Complex{u_real(u), 0.0};
    } else {
      out.values[idx] = u_scalar(u);
    }
  });
  return out;
}

namespace detail {

struct GridRead {
  bool ok = false;
  Complex v1{0.0, 0.0};
  Complex v2{0.0, 0.0};
};

/// Read a field at an arbitrary chart point: exact node hits are returned
/// verbatim, otherwise bilinear interpolation in (log a, b). Off-grid reads
/// and reads through missing nodes fail.
inline GridRead field_read(const TransformField& W, double a, double b) {
  const auto& g = W.grid;
  const double dla = g.log_step();
  const double db = g.b_step();
  const double u = (std::log(a) - std::log(g.aValues.front())) / dla;
  const double v = (b - g.bValues.front()) / db;
  const double nu = static_cast<double>(g.na() - 1);
  const double nv = static_cast<double>(g.nb() - 1);
  if (!(u >= -1e-9 && u <= nu + 1e-9 && v >= -1e-9 && v <= nv + 1e-9)) return {};

  const auto snap = [](double t, double n) {
    const double r = std::round(t);
    if (std::abs(t - r) < 1e-9 && r >= 0.0 && r <= n) return r;
    return -1.0;
  };
  const double su = snap(u, nu);
  const double sv = snap(v, nv);

  const auto sample = [&](std::size_t ia, std::size_t ib, GridRead& out, double w) {
    if (W.is_missing(ia, ib)) { out.ok = false; return false; }
    out.v1 += w * W.at(ia, ib);
    if (W.uDim == 2) out.v2 += w * W.at2(ia, ib);
    return true;
  };

  GridRead r;
  r.ok = true;
  const double uc = std::clamp(u, 0.0, nu);
  const double vc = std::clamp(v, 0.0, nv);
  std::size_t i = (su >= 0.0) ? static_cast<std::size_t>(su)
                              : std::min(g.na() - 2, static_cast<std::size_t>(uc));
  std::size_t j = (sv >= 0.0) ? static_cast<std::size_t>(sv)
                              : std::min(g.nb() - 2, static_cast<std::size_t>(vc));
  const double s = (su >= 0.0) ? 0.0 : uc - static_cast<double>(i);
  const double t = (sv >= 0.0) ? 0.0 : vc - static_cast<double>(j);
  const double w00 = (1.0 - s) * (1.0 - t);
  const double w10 = s * (1.0 - t);
  const double w01 = (1.0 - s) * t;
  const double w11 = s * t;
  if (w00 > 0.0 && !sample(i, j, r, w00)) return {};
  if (w10 > 0.0 && !sample(i + 1, j, r, w10)) return {};
  if (w01 > 0.0 && !sample(i, j + 1, r, w01)) return {};
  if (w11 > 0.0 && !sample(i + 1, j + 1, r, w11)) return {};
  return r;
}

}  // namespace detail

/// Left translation of a field: new value at c is the old value at c0 * c.
/// Reads that leave the grid are marked missing.
inline TransformField left_shift_field(const AffinePoint& c0, const TransformField& W) {
  check_affine(c0, "left_shift_field");
  TransformField out = W;
  out.missing.assign(W.values.size(), 0);
  for (std::size_t ia = 0; ia < W.grid.na(); ++ia)
    for (std::size_t ib = 0; ib < W.grid.nb(); ++ib) {
      const AffinePoint c{W.grid.aValues[ia], W.grid.bValues[ib]};
      const AffinePoint q = affine_compose(c0, c);
      const auto r = detail::field_read(W, q.a, q.b);
      const std::size_t idx = out.index(ia, ib);
      if (!r.ok) {
        out.missing[idx] = 1;
        out.values[idx] = Complex{0.0, 0.0};
        if (out.uDim == 2) out.values2[idx] = Complex{0.0, 0.0};
      } else {
        out.values[idx] = r.v1;
        if (out.uDim == 2) out.values2[idx] = r.v2;
      }
    }
  return out;
}

namespace detail {

inline double field_max_diff_interior(const TransformField& A, const TransformField& B) {
  require(A.grid.na() == B.grid.na() && A.grid.nb() == B.grid.nb(),
          "field diff: grid mismatch");
  double worst = -1.0;
  for (std::size_t ia = 1; ia + 1 < A.grid.na(); ++ia)
    for (std::size_t ib = 1; ib + 1 < A.grid.nb(); ++ib) {
      if (A.is_missing(ia, ib) || B.is_missing(ia, ib)) continue;
      double d = std::abs(A.at(ia, ib) - B.at(ia, ib));
      if (A.uDim == 2) d = std::max(d, std::abs(A.at2(ia, ib) - B.at2(ia, ib)));
      worst = std::max(worst, d);
    }
  require(worst >= 0.0, "field diff: empty interior");
  return worst;
}

}  // namespace detail

/// Covariance check: transforming the moved signal against left-translating
/// the transform. Exact zero at c0 = (1, 0); otherwise limited by the
/// resampling and read interpolation, which vanish under refinement.
inline double intertwining_residual(const ReprSpec& rho, const FiducialSpec& F,
                                    const SignalGrid& f, const AffinePoint& c0,
                                    const AffineGrid& grid) {
  const TransformField base = covariant_transform(rho, F, f, grid);
  const TransformField shifted = left_shift_field(c0, base);
  const SignalGrid moved = affine_rep_apply(rho.p, c0, f);
  const TransformField direct = covariant_transform(rho, F, moved, grid);
  return detail::field_max_diff_interior(direct, shifted);
}

/// Pointwise maximum over the scale axis; the window-mean field with
/// p = infinity turns into the centered maximal function of |f|.
inline SignalGrid maximal_function(const TransformField& W) {
  require(W.fiducial == FiducialSpec::Kind::Maximal && std::isinf(W.p),
          "maximal_function: field must be the p = infinity window-mean field");
  SignalGrid out;
  require(W.grid.nb() >= 2, "maximal_function: bad grid");
  out.x0 = W.grid.bValues.front();
  out.dx = W.grid.b_step();
  out.values.resize(W.grid.nb());
  for (std::size_t ib = 0; ib < W.grid.nb(); ++ib) {
    double m = 0.0;
    for (std::size_t ia = 0; ia < W.grid.na(); ++ia)
      m = std::max(m, W.at(ia, ib).real());
    out.values[ib] = Complex{m, 0.0};
  }
  return out;
}

/// max_b of the window-mean field along the a = 1/2 row.
inline double shift_invariant_norm(const SignalGrid& f, const AffineGrid& grid) {
  std::size_t row = grid.na();
  for (std::size_t ia = 0; ia < grid.na(); ++ia)
    if (std::abs(grid.aValues[ia] - 0.5) <= 1e-12) { row = ia; break; }
  require(row < grid.na(), "shift_invariant_norm: a = 1/2 must be a grid scale");
  const TransformField W =
      covariant_transform(affine_repr(kInf), maximal_fiducial(), f, grid);
  double m = 0.0;
  for (std::size_t ib = 0; ib < grid.nb(); ++ib)
    m = std::max(m, W.at(row, ib).real());
  return m;
}

enum class DerivedDirection { ScaleGenerator, ShiftGenerator };

/// Derived action of the one-parameter subgroups on smooth signals:
/// scale generator f + x f', shift generator f'. The derivative is spectral
/// (transform, multiply by i lambda, invert; the unmatched top bin is
/// dropped).
inline SignalGrid derived_rep_apply(DerivedDirection which, const SignalGrid& f) {
  SignalGrid spec = dft(f, DftDirection::Forward);
  for (std::size_t j = 0; j < spec.values.size(); ++j) {
    const double lambda = spectrum_lambda(spec, j);
    spec.values[j] *= Complex{0.0, lambda};
  }
  spec.values.back() = Complex{0.0, 0.0};  // Nyquist bin has no conjugate partner
  SignalGrid deriv = dft(spec, DftDirection::Inverse);
  if (which == DerivedDirection::ShiftGenerator) return deriv;
  SignalGrid out = f;
  for (std::size_t k = 0; k < out.values.size(); ++k)
    out.values[k] = f.values[k] + out.x(k) * deriv.values[k];
  return out;
}

/// Interior max of |a dW/da - i a dW/db| with centered second-order stencils;
/// the scale derivative is taken in log a, which is exactly a d/da.
inline double cauchy_riemann_residual(const TransformField& W) {
  require(W.p == 1.0 && W.fiducial == FiducialSpec::Kind::CauchyPlus,
          "cauchy_riemann_residual: needs the p = 1 analytic-kernel field");
  require(W.grid.na() >= 3 && W.grid.nb() >= 3,
          "cauchy_riemann_residual: grid too small for centered stencils");
  const double dla = W.grid.log_step();
  const double db = W.grid.b_step();
  double worst = 0.0;
  for (std::size_t ia = 1; ia + 1 < W.grid.na(); ++ia)
    for (std::size_t ib = 1; ib + 1 < W.grid.nb(); ++ib) {
      const Complex da = (W.at(ia + 1, ib) - W.at(ia - 1, ib)) / (2.0 * dla);
      const Complex dbv = (W.at(ia, ib + 1) - W.at(ia, ib - 1)) / (2.0 * db);
      const double a = W.grid.aValues[ia];
      worst = std::max(worst, std::abs(da - Complex{0.0, 1.0} * (a * dbv)));
    }
  return worst;
}

/// Same residual for an arbitrary scalar field (negative controls).
inline double cauchy_riemann_residual_any(const TransformField& W) {
  TransformField copy = W;
  copy.p = 1.0;
  copy.fiducial = FiducialSpec::Kind::CauchyPlus;
  return cauchy_riemann_residual(copy);
}

/// Residuals of the compact-subgroup relations F+ o rho(h_t) = e^{-it} F+ and
/// F- o rho(h_t) = e^{+it} F- under the line action.
inline std::array<double, 2> induced_coset_residual(const SignalGrid& f, double t) {
  check_signal(f, "induced_coset_residual");
  // Formula matrix of the rotation element: (cos t, -sin t; sin t, cos t).
  const Sl2Element m{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
  const LineRepResult moved = sl2_line_rep_apply(m, f);
  const double n0 = lp_norm(f, 2.0);
  const double n1 = lp_norm(moved.signal, 2.0);
  require(n0 > 0.0, "induced_coset_residual: zero signal");
  const double loss = std::abs(1.0 - (n1 * n1) / (n0 * n0));
  if (loss > 1e-6)
    throw NumericalError("induced_coset_residual: rotated signal lost too much mass");
  const Complex fp = cauchy_integral(f, Complex{0.0, 1.0});
  const Complex fm = cauchy_integral(f, Complex{0.0, -1.0});
  const Complex gp = cauchy_integral(moved.signal, Complex{0.0, 1.0});
  const Complex gm = cauchy_integral(moved.signal, Complex{0.0, -1.0});
  return {std::abs(gp - std::polar(1.0, -t) * fp), std::abs(gm - std::polar(1.0, t) * fm)};
}

/// Right-shift law: composing the fiducial with the action at c' matches
/// re-reading the plain field at the composed pair c * c'.
inline double right_shift_consistency(const ReprSpec& rho, const FiducialSpec& F,
                                      const SignalGrid& f, const AffinePoint& cprime,
                                      const AffineGrid& grid) {
  const TransformField base = covariant_transform(rho, F, f, grid);
  double worst = -1.0;
  for (std::size_t ia = 1; ia + 1 < grid.na(); ++ia)
    for (std::size_t ib = 1; ib + 1 < grid.nb(); ++ib) {
      const AffinePoint c{grid.aValues[ia], grid.bValues[ib]};
      const AffinePoint q = affine_compose(c, cprime);
      const auto read = detail::field_read(base, q.a, q.b);
      if (!read.ok) continue;
      const SignalGrid inner = affine_rep_apply(rho.p, c, f);
      const SignalGrid composed = affine_rep_apply(rho.p, cprime, inner);
      const UValue u = eval_fiducial(F, composed);
      double d;
      if (F.u_dim() == 2) {
        const auto pr = u_pair(u);
        d = std::max(std::abs(pr[0] - read.v1), std::abs(pr[1] - read.v2));
      } else if (std::holds_alternative<double>(u)) {
        d = std::abs(Complex{u_real(u), 0.0} - read.v1);
      } else {
        d = std::abs(u_scalar(u) - read.v1);
      }
      worst = std::max(worst, d);
    }
  require(worst >= 0.0, "right_shift_consistency: empty interior");
  return worst;
}

// ---------------------------------------------------------------------------
// Radon transform over Euclidean motions
// ---------------------------------------------------------------------------

struct Sinogram {
  std::vector<double> thetaGrid;
  std::vector<double> sGrid;
  std::vector<Complex> values;  // theta-major

  Complex at(std::size_t it, std::size_t is) const { return values[it * sGrid.size() + is]; }
};

/// Line integrals of a plane field. The line for (theta, s) is the x-axis
/// moved by the rotation theta followed by the offset s in the rotated
/// normal direction: t |-> (t cos theta - s sin theta, t sin theta + s cos
/// theta). Sampling step along the line is min(dx, dy) with trapezoid
/// weights and bilinear reads.
inline Sinogram radon_transform(const PlaneField& f, const std::vector<double>& thetaGrid,
                                const std::vector<double>& sGrid) {
  require(f.nx >= 2 && f.ny >= 2, "radon_transform: bad field");
  require(!thetaGrid.empty() && !sGrid.empty(), "radon_transform: empty grids");
  const double step = std::min(f.dx, f.dy);
  const double half_span = 0.5 * std::hypot(f.x_end() - f.x0, f.y_end() - f.y0) + 2.0 * step;
  const auto m = static_cast<std::size_t>(std::ceil(2.0 * half_span / step));
  Sinogram out;
  out.thetaGrid = thetaGrid;
  out.sGrid = sGrid;
  out.values.resize(thetaGrid.size() * sGrid.size());
  parallel_for(out.values.size(), worker_count(), [&](std::size_t idx) {
    const std::size_t it = idx / sGrid.size();
    const std::size_t is = idx % sGrid.size();
    const double ct = std::cos(thetaGrid[it]);
    const double st = std::sin(thetaGrid[it]);
    const double s = sGrid[is];
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j <= m; ++j) {
      const double t = -half_span + static_cast<double>(j) * step;
      const Complex v = bilinear_eval(f, ct * t - st * s, st * t + ct * s);
      acc += (j == 0 || j == m) ? 0.5 * v : v;
    }
    out.values[idx] = acc * step;
  });
  return out;
}

}  // namespace covtrans
