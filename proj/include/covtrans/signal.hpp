#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "covtrans/core.hpp"

namespace covtrans {

// ---------------------------------------------------------------------------
// Sampled signals on the line
// ---------------------------------------------------------------------------

/// Uniformly sampled complex function on [x0, x0 + (n-1) dx]. Signals are
/// compactly supported by convention: evaluation outside the window is 0.
struct SignalGrid {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t k) const { return x0 + static_cast<double>(k) * dx; }
  double x_end() const { return x0 + static_cast<double>(values.size() - 1) * dx; }
};

inline void check_signal(const SignalGrid& f, const char* who) {
  require(f.dx > 0.0 && std::isfinite(f.dx) && std::isfinite(f.x0),
          std::string(who) + ": bad grid geometry");
  require(f.values.size() >= 2, std::string(who) + ": need at least two samples");
}

inline SignalGrid make_signal(double x0, double dx, std::size_t n,
                              const std::function<Complex(double)>& fn) {
  require(n >= 2 && dx > 0.0, "make_signal: need n >= 2 and dx > 0");
  SignalGrid f;
  f.x0 = x0;
  f.dx = dx;
  f.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) f.values[k] = fn(x0 + static_cast<double>(k) * dx);
  return f;
}

/// Symmetric grid [-extent, extent) with n samples; dx = 2 extent / n.
inline SignalGrid make_signal_symmetric(double extent, std::size_t n,
                                        const std::function<Complex(double)>& fn) {
  const double dx = 2.0 * extent / static_cast<double>(n);
  return make_signal(-extent, dx, n, fn);
}

// ---------------------------------------------------------------------------
// Interpolation and quadrature
// ---------------------------------------------------------------------------

/// Four-point cubic interpolation (Lagrange stencil); reproduces cubics
/// exactly and returns the sample value at grid nodes. Outside the sampled
/// window the signal is 0 by convention.
inline Complex interpolate_eval(const SignalGrid& f, double x) {
  const std::size_t n = f.values.size();
  const double u = (x - f.x0) / f.dx;
  const double nd = static_cast<double>(n - 1);
  if (!(u >= 0.0 && u <= nd)) return Complex{0.0, 0.0};
  if (n < 4) {  // degenerate grids: linear between neighbors
    std::size_t j = std::min(n - 2, static_cast<std::size_t>(u));
    const double t = u - static_cast<double>(j);
    return (1.0 - t) * f.values[j] + t * f.values[j + 1];
  }
  std::size_t j = static_cast<std::size_t>(u);
  if (j > n - 2) j = n - 2;
  // Shift boundary cells onto the one-sided four-point stencil.
  std::size_t js = j;
  if (js == 0) js = 1;
  if (js > n - 3) js = n - 3;
  const double t = u - static_cast<double>(js);
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w0 * f.values[js - 1] + w1 * f.values[js] + w2 * f.values[js + 1] +
         w3 * f.values[js + 2];
}

/// Composite Simpson rule over the sampled support, left-to-right summation.
/// With an odd interval count the final panel falls back to the trapezoid
/// rule; signals here decay at the window edge so the loss is immaterial.
inline Complex quadrature_integral(const SignalGrid& f) {
  check_signal(f, "quadrature_integral");
  require(f.values.size() >= 3, "quadrature_integral: need at least three samples");
  const std::size_t m = f.values.size() - 1;  // interval count
  const double h = f.dx;
  Complex acc{0.0, 0.0};
  std::size_t i = 0;
  const std::size_t simpson_end = (m % 2 == 0) ? m : m - 1;
  for (; i + 2 <= simpson_end; i += 2)
    acc += (h / 3.0) * (f.values[i] + 4.0 * f.values[i + 1] + f.values[i + 2]);
  if (m % 2 != 0) acc += (h / 2.0) * (f.values[m - 1] + f.values[m]);
  return acc;
}

/// Simpson integral of fn over the node range [k0, k1] of f's grid.
inline Complex quadrature_over_nodes(const SignalGrid& f, std::size_t k0, std::size_t k1,
                                     const std::function<Complex(std::size_t)>& fn) {
  require(k1 > k0 && k1 < f.values.size(), "quadrature_over_nodes: bad range");
  const std::size_t m = k1 - k0;
  const double h = f.dx;
  Complex acc{0.0, 0.0};
  std::size_t i = 0;
  const std::size_t simpson_end = (m % 2 == 0) ? m : m - 1;
  for (; i + 2 <= simpson_end; i += 2)
    acc += (h / 3.0) * (fn(k0 + i) + 4.0 * fn(k0 + i + 1) + fn(k0 + i + 2));
  if (m % 2 != 0) acc += (h / 2.0) * (fn(k1 - 1) + fn(k1));
  return acc;
}

/// (1/2 pi i) * integral of f(t) / (t - z) dt over the sampled support.
/// Plain quadrature: the pole must stay at least one grid step away from the
/// real axis, where the kernel is smooth.
inline Complex cauchy_integral(const SignalGrid& f, Complex z) {
  check_signal(f, "cauchy_integral");
  require(std::abs(z.imag()) >= f.dx,
          "cauchy_integral: |Im z| must be at least one grid step");
  SignalGrid g = f;
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    const double t = g.x(k);
    g.values[k] = f.values[k] / (Complex{t, 0.0} - z);
  }
  const Complex integral = quadrature_integral(g);
  return integral / (Complex{0.0, 2.0 * kPi});
}

// ---------------------------------------------------------------------------
// Discrete Fourier transform, unitary, angular frequencies
// ---------------------------------------------------------------------------

namespace detail {

inline void fft_radix2(std::vector<Complex>& a, bool forward) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (forward ? -2.0 : 2.0) * kPi / static_cast<double>(len);
    const Complex wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace detail

enum class DftDirection { Forward, Inverse };

/// Unitary DFT between a symmetric spatial window [-n dx / 2, n dx / 2) and
/// angular frequencies lambda_k = 2 pi k / (n dx), k in (-n/2, n/2]. Forward
/// maps a spatial signal to its spectrum on the ascending lambda grid;
/// Inverse maps such a spectrum back. inverse(forward(f)) == f to 1e-12.
inline SignalGrid dft(const SignalGrid& f, DftDirection direction) {
  check_signal(f, "dft");
  const std::size_t n = f.values.size();
  require(detail::is_power_of_two(n), "dft: length must be a power of two");
  const std::size_t half = n / 2;

  if (direction == DftDirection::Forward) {
    require(std::abs(f.x0 + static_cast<double>(half) * f.dx) <=
                1e-12 * static_cast<double>(n) * f.dx,
            "dft: spatial grid must be the symmetric window x0 = -n dx / 2");
    const double dl = 2.0 * kPi / (static_cast<double>(n) * f.dx);
    std::vector<Complex> a = f.values;
    detail::fft_radix2(a, true);
    SignalGrid out;
    out.dx = dl;
    out.x0 = -(static_cast<double>(half) - 1.0) * dl;
    out.values.resize(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      // Ascending lambda order: bin j holds integer frequency k = j - half + 1.
      const long k = static_cast<long>(j) - static_cast<long>(half) + 1;
      const std::size_t src = static_cast<std::size_t>((k + static_cast<long>(n)) %
                                                       static_cast<long>(n));
      const double lambda = static_cast<double>(k) * dl;
      out.values[j] = scale * std::polar(1.0, -lambda * f.x0) * a[src];
    }
    return out;
  }

  // Inverse: input is a spectrum laid out as above.
  const double dl = f.dx;
  const double dx = 2.0 * kPi / (static_cast<double>(n) * dl);
  const double x0 = -static_cast<double>(half) * dx;
  std::vector<Complex> a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const long k = static_cast<long>(j) - static_cast<long>(half) + 1;
    const std::size_t dst = static_cast<std::size_t>((k + static_cast<long>(n)) %
                                                     static_cast<long>(n));
    const double lambda = static_cast<double>(k) * dl;
    a[dst] = scale * std::polar(1.0, lambda * x0) * f.values[j];
  }
  detail::fft_radix2(a, false);
  SignalGrid out;
  out.x0 = x0;
  out.dx = dx;
  out.values = std::move(a);
  return out;
}

/// Angular frequency of spectrum bin j (spectrum produced by dft Forward).
inline double spectrum_lambda(const SignalGrid& spectrum, std::size_t j) {
  return spectrum.x(j);
}

/// L^p norm by quadrature; p = infinity gives max |sample|.
inline double lp_norm(const SignalGrid& f, double p) {
  check_signal(f, "lp_norm");
  require(p >= 1.0, "lp_norm: p must be >= 1 (or infinity)");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  SignalGrid g = f;
  for (auto& v : g.values) v = Complex{std::pow(std::abs(v), p), 0.0};
  const double integral = std::max(0.0, quadrature_integral(g).real());
  return std::pow(integral, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Plane and half-plane fields
// ---------------------------------------------------------------------------

/// Uniformly sampled complex function on a rectangle; row-major over y.
struct PlaneField {
  double x0 = 0.0, dx = 1.0;
  double y0 = 0.0, dy = 1.0;
  std::size_t nx = 0, ny = 0;
  std::vector<Complex> values;  // values[iy * nx + ix]

  Complex at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
  double x(std::size_t ix) const { return x0 + static_cast<double>(ix) * dx; }
  double y(std::size_t iy) const { return y0 + static_cast<double>(iy) * dy; }
  double x_end() const { return x0 + static_cast<double>(nx - 1) * dx; }
  double y_end() const { return y0 + static_cast<double>(ny - 1) * dy; }
};

inline PlaneField make_plane_field(double x0, double dx, std::size_t nx, double y0, double dy,
                                   std::size_t ny,
                                   const std::function<Complex(double, double)>& fn) {
  require(nx >= 2 && ny >= 2 && dx > 0.0 && dy > 0.0, "make_plane_field: bad geometry");
  PlaneField f;
  f.x0 = x0; f.dx = dx; f.nx = nx;
  f.y0 = y0; f.dy = dy; f.ny = ny;
  f.values.resize(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      f.values[iy * nx + ix] = fn(f.x(ix), f.y(iy));
  return f;
}

/// Bilinear evaluation; 0 outside the sampled rectangle.
inline Complex bilinear_eval(const PlaneField& f, double x, double y) {
  const double u = (x - f.x0) / f.dx;
  const double v = (y - f.y0) / f.dy;
  if (!(u >= 0.0 && u <= static_cast<double>(f.nx - 1))) return Complex{0.0, 0.0};
  if (!(v >= 0.0 && v <= static_cast<double>(f.ny - 1))) return Complex{0.0, 0.0};
  std::size_t i = std::min(f.nx - 2, static_cast<std::size_t>(u));
  std::size_t j = std::min(f.ny - 2, static_cast<std::size_t>(v));
  const double s = u - static_cast<double>(i);
  const double t = v - static_cast<double>(j);
  return (1.0 - s) * (1.0 - t) * f.at(i, j) + s * (1.0 - t) * f.at(i + 1, j) +
         (1.0 - s) * t * f.at(i, j + 1) + s * t * f.at(i + 1, j + 1);
}

/// Function sampled at z = b + i a, a on a positive log-spaced grid.
struct HalfPlaneField {
  std::vector<double> aGrid;  // log-spaced, all > 0
  std::vector<double> bGrid;  // uniform
  std::vector<Complex> values;  // values[ia * bGrid.size() + ib]

  Complex at(std::size_t ia, std::size_t ib) const { return values[ia * bGrid.size() + ib]; }
};

inline HalfPlaneField make_half_plane_field(const std::vector<double>& aGrid,
                                            const std::vector<double>& bGrid,
                                            const std::function<Complex(Complex)>& fn) {
  require(aGrid.size() >= 2 && bGrid.size() >= 2, "make_half_plane_field: bad grids");
  for (double a : aGrid) require(a > 0.0, "make_half_plane_field: a must be positive");
  HalfPlaneField f;
  f.aGrid = aGrid;
  f.bGrid = bGrid;
  f.values.resize(aGrid.size() * bGrid.size());
  for (std::size_t ia = 0; ia < aGrid.size(); ++ia)
    for (std::size_t ib = 0; ib < bGrid.size(); ++ib)
      f.values[ia * bGrid.size() + ib] = fn(Complex{bGrid[ib], aGrid[ia]});
  return f;
}

/// Bilinear in (log a, b); 0 outside the sampled window.
inline Complex half_plane_eval(const HalfPlaneField& f, Complex z) {
  if (!(z.imag() > 0.0)) return Complex{0.0, 0.0};
  const double la0 = std::log(f.aGrid.front());
  const double dla = std::log(f.aGrid[1] / f.aGrid[0]);
  const double db = f.bGrid[1] - f.bGrid[0];
  const double u = (std::log(z.imag()) - la0) / dla;
  const double v = (z.real() - f.bGrid.front()) / db;
  const double nu = static_cast<double>(f.aGrid.size() - 1);
  const double nv = static_cast<double>(f.bGrid.size() - 1);
  if (!(u >= 0.0 && u <= nu && v >= 0.0 && v <= nv)) return Complex{0.0, 0.0};
  std::size_t i = std::min(f.aGrid.size() - 2, static_cast<std::size_t>(u));
  std::size_t j = std::min(f.bGrid.size() - 2, static_cast<std::size_t>(v));
  const double s = u - static_cast<double>(i);
  const double t = v - static_cast<double>(j);
  return (1.0 - s) * (1.0 - t) * f.at(i, j) + s * (1.0 - t) * f.at(i + 1, j) +
         (1.0 - s) * t * f.at(i, j + 1) + s * t * f.at(i + 1, j + 1);
}

// ---------------------------------------------------------------------------
// Built-in test signals
// ---------------------------------------------------------------------------

/// C-infinity flat-top window: 1 on [-inner, inner], 0 beyond +-outer.
inline double flat_top_window(double x, double inner, double outer) {
  const double ax = std::abs(x);
  if (ax <= inner) return 1.0;
  if (ax >= outer) return 0.0;
  const auto b = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  const double u = (outer - ax) / (outer - inner);
  return b(u) / (b(u) + b(1.0 - u));
}

inline SignalGrid make_rational(double extent, std::size_t n) {
  return make_signal_symmetric(extent, n, [](double t) {
    return Complex{1.0 / (1.0 + t * t), 0.0};
  });
}

inline SignalGrid make_gaussian(double extent, std::size_t n) {
  return make_signal_symmetric(extent, n, [](double t) {
    return Complex{std::exp(-t * t), 0.0};
  });
}

/// Indicator of [lo, hi]; samples that land exactly on a jump carry the
/// midpoint value 1/2, which keeps quadrature of the interpolant exact.
inline SignalGrid make_indicator(double lo, double hi, double extent, std::size_t n) {
  require(lo < hi, "make_indicator: need lo < hi");
  const double dx = 2.0 * extent / static_cast<double>(n);
  return make_signal_symmetric(extent, n, [=](double t) {
    const double edge = 0.25 * dx;
    if (std::abs(t - lo) < edge || std::abs(t - hi) < edge) return Complex{0.5, 0.0};
    return (t > lo && t < hi) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  });
}

inline SignalGrid make_tone(double omega, double inner, double outer, double extent,
                            std::size_t n) {
  return make_signal_symmetric(extent, n, [=](double t) {
    return std::polar(flat_top_window(t, inner, outer), omega * t);
  });
}

inline SignalGrid make_windowed_rational(double inner, double outer, double extent,
                                         std::size_t n) {
  return make_signal_symmetric(extent, n, [=](double t) {
    return Complex{flat_top_window(t, inner, outer) / (1.0 + t * t), 0.0};
  });
}

/// 1 / (2 pi i (x + i)), the reproducing-kernel mother wavelet.
inline SignalGrid make_cauchy_wavelet(double extent, std::size_t n) {
  return make_signal_symmetric(extent, n, [](double t) {
    return 1.0 / (Complex{0.0, 2.0 * kPi} * Complex{t, 1.0});
  });
}

}  // namespace covtrans
