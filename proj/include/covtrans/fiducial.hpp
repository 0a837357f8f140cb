#pragma once

#include <array>
#include <cmath>
#include <string>
#include <variant>

#include "covtrans/core.hpp"
#include "covtrans/signal.hpp"

namespace covtrans {

/// Catalog of fiducial operators F : V -> U used by the transform engine.
struct FiducialSpec {
  enum class Kind {
    CauchyPlus,      // (1/2 pi i) integral f(t)/(t - i) dt
    CauchyMinus,     // (1/2 pi i) integral f(t)/(t + i) dt
    Poisson,         // CauchyPlus - CauchyMinus
    Jump,            // (CauchyPlus, CauchyMinus) as a pair
    PairWith,        // integral f conj(w) dt against a fixed vector w
    Maximal,         // (1/2) integral_{-1}^{1} |f| dt, nonlinear and 1-homogeneous
    LittlewoodPaley, // band projector, has a dedicated operation
    RadonLine        // plane slice functional, has a dedicated operation
  };
  Kind kind = Kind::CauchyPlus;
  SignalGrid weight;  // PairWith only

  std::size_t u_dim() const { return kind == Kind::Jump ? 2 : 1; }
};

inline FiducialSpec cauchy_plus_fiducial() { return {FiducialSpec::Kind::CauchyPlus, {}}; }
inline FiducialSpec cauchy_minus_fiducial() { return {FiducialSpec::Kind::CauchyMinus, {}}; }
inline FiducialSpec poisson_fiducial() { return {FiducialSpec::Kind::Poisson, {}}; }
inline FiducialSpec jump_fiducial() { return {FiducialSpec::Kind::Jump, {}}; }
inline FiducialSpec maximal_fiducial() { return {FiducialSpec::Kind::Maximal, {}}; }

inline FiducialSpec pair_with_fiducial(SignalGrid w) {
  check_signal(w, "pair_with_fiducial");
  require(std::isfinite(lp_norm(w, 2.0)), "pair_with_fiducial: weight needs finite L2 norm");
  return {FiducialSpec::Kind::PairWith, std::move(w)};
}

/// Values of the target space U: a scalar, a pair, or a nonnegative real.
using UValue = std::variant<Complex, std::array<Complex, 2>, double>;

inline Complex u_scalar(const UValue& u) { return std::get<Complex>(u); }
inline std::array<Complex, 2> u_pair(const UValue& u) { return std::get<std::array<Complex, 2>>(u); }
inline double u_real(const UValue& u) { return std::get<double>(u); }

inline double u_abs_max(const UValue& u) {
  if (std::holds_alternative<Complex>(u)) return std::abs(std::get<Complex>(u));
  if (std::holds_alternative<double>(u)) return std::abs(std::get<double>(u));
  const auto& p = std::get<std::array<Complex, 2>>(u);
  return std::max(std::abs(p[0]), std::abs(p[1]));
}

namespace detail {

/// Mean of |f| over [-1, 1]: Simpson over the grid nodes inside, with
/// interpolated trapezoid strips closing the gap to the exact endpoints.
inline double windowed_mean_abs(const SignalGrid& f) {
  check_signal(f, "maximal fiducial");
  require(f.x0 <= -1.0 && f.x_end() >= 1.0,
          "maximal fiducial: grid must cover [-1, 1]");
  const auto k_lo = static_cast<std::size_t>(std::ceil((-1.0 - f.x0) / f.dx - 1e-12));
  const auto k_hi = static_cast<std::size_t>(std::floor((1.0 - f.x0) / f.dx + 1e-12));
  double acc = quadrature_over_nodes(f, k_lo, k_hi, [&](std::size_t k) {
                 return Complex{std::abs(f.values[k]), 0.0};
               }).real();
  const double left_gap = f.x(k_lo) - (-1.0);
  if (left_gap > 1e-12 * f.dx)
    acc += 0.5 * left_gap * (std::abs(interpolate_eval(f, -1.0)) + std::abs(f.values[k_lo]));
  const double right_gap = 1.0 - f.x(k_hi);
  if (right_gap > 1e-12 * f.dx)
    acc += 0.5 * right_gap * (std::abs(f.values[k_hi]) + std::abs(interpolate_eval(f, 1.0)));
  return 0.5 * acc;
}

}  // namespace detail

/// Evaluate a pointwise fiducial. LittlewoodPaley and RadonLine live in their
/// dedicated operations below and are rejected here.
inline UValue eval_fiducial(const FiducialSpec& F, const SignalGrid& f) {
  switch (F.kind) {
    case FiducialSpec::Kind::CauchyPlus:
      return cauchy_integral(f, Complex{0.0, 1.0});
    case FiducialSpec::Kind::CauchyMinus:
      return cauchy_integral(f, Complex{0.0, -1.0});
    case FiducialSpec::Kind::Poisson:
      return cauchy_integral(f, Complex{0.0, 1.0}) - cauchy_integral(f, Complex{0.0, -1.0});
    case FiducialSpec::Kind::Jump:
      return std::array<Complex, 2>{cauchy_integral(f, Complex{0.0, 1.0}),
                                    cauchy_integral(f, Complex{0.0, -1.0})};
    case FiducialSpec::Kind::PairWith: {
      check_signal(f, "eval_fiducial");
      require(F.weight.values.size() == f.values.size() &&
                  nearly_equal(F.weight.x0, f.x0, 1e-12) &&
                  nearly_equal(F.weight.dx, f.dx, 1e-15),
              "eval_fiducial: PairWith weight must share the signal grid");
      SignalGrid g = f;
      for (std::size_t k = 0; k < g.values.size(); ++k)
        g.values[k] = f.values[k] * std::conj(F.weight.values[k]);
      return quadrature_integral(g);
    }
    case FiducialSpec::Kind::Maximal:
      return detail::windowed_mean_abs(f);
    default:
      throw PreconditionError("eval_fiducial: variant has a dedicated operation");
  }
}

/// Band projector: spectrum bins with |lambda| in [1, 2] (closed band, edge
/// bins included) survive, everything else is zeroed.
inline SignalGrid littlewood_paley_project(const SignalGrid& f) {
  SignalGrid spec = dft(f, DftDirection::Forward);
  for (std::size_t j = 0; j < spec.values.size(); ++j) {
    const double al = std::abs(spectrum_lambda(spec, j));
    if (!(al >= 1.0 && al <= 2.0)) spec.values[j] = Complex{0.0, 0.0};
  }
  return dft(spec, DftDirection::Inverse);
}

/// Integral of f along the horizontal slice y = 0.
inline Complex radon_line_functional(const PlaneField& f) {
  require(f.nx >= 3 && f.ny >= 2, "radon_line_functional: bad field");
  require(f.y0 <= 0.0 && f.y_end() >= 0.0,
          "radon_line_functional: y = 0 must lie inside the sampled rows");
  SignalGrid slice;
  slice.x0 = f.x0;
  slice.dx = f.dx;
  slice.values.resize(f.nx);
  for (std::size_t ix = 0; ix < f.nx; ++ix)
    slice.values[ix] = bilinear_eval(f, f.x(ix), 0.0);
  return quadrature_integral(slice);
}

/// |F(t f) - t F(f)|, componentwise max for pair-valued U. Zero for every
/// 1-homogeneous fiducial and t > 0.
inline double homogeneity_check(const FiducialSpec& F, const SignalGrid& f, double t) {
  require(t > 0.0, "homogeneity_check: t must be positive");
  SignalGrid tf = f;
  for (auto& v : tf.values) v *= t;
  const UValue left = eval_fiducial(F, tf);
  const UValue right = eval_fiducial(F, f);
  if (std::holds_alternative<Complex>(left))
    return std::abs(u_scalar(left) - t * u_scalar(right));
  if (std::holds_alternative<double>(left))
    return std::abs(u_real(left) - t * u_real(right));
  const auto l = u_pair(left);
  const auto r = u_pair(right);
  return std::max(std::abs(l[0] - t * r[0]), std::abs(l[1] - t * r[1]));
}

}  // namespace covtrans
