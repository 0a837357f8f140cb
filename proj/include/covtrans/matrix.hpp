#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "covtrans/core.hpp"

namespace covtrans {

/// Small dense complex matrix (dimension <= 16 in this project).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), e_(n * n, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      require(row.size() == m.n_, "ComplexMatrix: ragged initializer");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t dim() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : e_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (const auto& v : e_) s = std::max(s, std::abs(v));
    return s;
  }

  bool all_finite() const {
    for (const auto& v : e_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.n_ == b.n_, "matrix add: dimension mismatch");
    ComplexMatrix m(a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
    return m;
  }
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.n_ == b.n_, "matrix sub: dimension mismatch");
    ComplexMatrix m(a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
    return m;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.n_ == b.n_, "matrix mul: dimension mismatch");
    ComplexMatrix m(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < a.n_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix m(a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = s * a.e_[k];
    return m;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a, Complex s) { return s * a; }

 private:
  std::size_t n_ = 0;
  std::vector<Complex> e_;
};

using ComplexVector = std::vector<Complex>;

inline ComplexVector mat_vec(const ComplexMatrix& m, const ComplexVector& x) {
  require(m.dim() == x.size(), "mat_vec: dimension mismatch");
  ComplexVector y(m.dim(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

/// Hermitian inner product <x, y> = sum x_i conj(y_i).
inline Complex dot(const ComplexVector& x, const ComplexVector& y) {
  require(x.size() == y.size(), "dot: dimension mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double vec_norm(const ComplexVector& x) { return std::sqrt(std::abs(dot(x, x))); }

/// Inverse by Gauss-Jordan elimination with partial pivoting.
inline ComplexMatrix inverse(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix w = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(w(col, col));
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(w(r, col)) > best) { best = std::abs(w(r, col)); piv = r; }
    if (best < 1e-14 * std::max(1.0, a.max_abs()))
      throw NumericalError("inverse: matrix is numerically singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(piv, j), w(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Complex d = w(col, col);
    for (std::size_t j = 0; j < n; ++j) { w(col, j) /= d; inv(col, j) /= d; }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = w(r, col);
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(r, j) -= f * w(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

inline double offdiag_frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

/// Cyclic Jacobi for complex Hermitian matrices. Sweeps until the
/// off-diagonal Frobenius norm drops below 1e-12 (relative to the matrix
/// scale) or 60 sweeps pass.
inline HermitianEigen jacobi_hermitian(const ComplexMatrix& m, double hermitian_tol = 1e-10) {
  const std::size_t n = m.dim();
  require(n >= 1, "jacobi_hermitian: empty matrix");
  const double scale = std::max(1.0, m.max_abs());
  ComplexMatrix h = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      require(std::abs(h(i, j) - std::conj(h(j, i))) <= hermitian_tol * scale,
              "jacobi_hermitian: input is not Hermitian");
      if (i == j) h(i, j) = Complex{h(i, j).real(), 0.0};
    }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double stop = 1e-12 * scale;
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (offdiag_frobenius(h) <= stop) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = h(p, q);
        const double mag = std::abs(apq);
        if (mag <= stop / static_cast<double>(n)) continue;
        const Complex phase = apq / mag;
        const double app = h(p, p).real(), aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        // Small-magnitude root of t^2 - 2 tau t - 1 = 0.
        const double t = (tau >= 0.0) ? (tau - std::sqrt(tau * tau + 1.0))
                                      : (tau + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Unitary G with G(p,p)=c, G(p,q)=-s*phase, G(q,p)=s*conj(phase), G(q,q)=c.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hkp = h(k, p), hkq = h(k, q);
          h(k, p) = c * hkp + s * std::conj(phase) * hkq;
          h(k, q) = -s * phase * hkp + c * hkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hpk = h(p, k), hqk = h(q, k);
          h(p, k) = c * hpk + s * phase * hqk;
          h(q, k) = -s * std::conj(phase) * hpk + c * hqk;
        }
        h(p, q) = Complex{0.0, 0.0};
        h(q, p) = Complex{0.0, 0.0};
        h(p, p) = Complex{h(p, p).real(), 0.0};
        h(q, q) = Complex{h(q, q).real(), 0.0};
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + s * std::conj(phase) * vkq;
          v(k, q) = -s * phase * vkp + c * vkq;
        }
      }
  }
  HermitianEigen out;
  out.values.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return h(x, x).real() < h(y, y).real(); });
  out.vectors = ComplexMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = h(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// Spectral norm ||m||_2 through the Hermitian eigenproblem of m* m.
inline double operator_norm_2(const ComplexMatrix& m) {
  if (m.dim() == 0) return 0.0;
  const ComplexMatrix g = m.adjoint() * m;
  const auto eig = jacobi_hermitian(g, 1e-8);
  const double top = eig.values.empty() ? 0.0 : eig.values.back();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace covtrans
