#pragma once

#include <cmath>
#include <vector>

#include "covtrans/core.hpp"
#include "covtrans/groups.hpp"
#include "covtrans/matrix.hpp"
#include "covtrans/repr.hpp"

namespace covtrans {

/// Hermitian PSD square root via the Jacobi eigendecomposition. Eigenvalues
/// in [-1e-10, 0) (relative to the matrix scale) are clamped to zero; more
/// negative spectra are rejected.
inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& m) {
  require(m.dim() >= 1 && m.all_finite(), "hermitian_sqrt: bad matrix");
  const auto eig = jacobi_hermitian(m, 1e-10);
  const double scale = std::max(1.0, m.max_abs());
  std::vector<double> roots(eig.values.size());
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    double lambda = eig.values[i];
    require(lambda >= -1e-10 * scale, "hermitian_sqrt: matrix is not positive semidefinite");
    if (lambda < 0.0) lambda = 0.0;
    roots[i] = std::sqrt(lambda);
  }
  const std::size_t n = m.dim();
  ComplexMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * roots[k] * std::conj(eig.vectors(j, k));
      s(i, j) = acc;
    }
  return s;
}

struct DefectPair {
  ComplexMatrix d_t;       // (I - T* T)^{1/2}
  ComplexMatrix d_t_star;  // (I - T T*)^{1/2}
};

inline DefectPair defect_operators(const ComplexMatrix& T) {
  require(T.dim() >= 1 && T.all_finite(), "defect_operators: bad matrix");
  require(operator_norm_2(T) <= 1.0 + 1e-10, "defect_operators: contraction required");
  const ComplexMatrix eye = ComplexMatrix::identity(T.dim());
  return {hermitian_sqrt(eye - T.adjoint() * T), hermitian_sqrt(eye - T * T.adjoint())};
}

/// Theta_T(z) = -T + D_{T*} (I - z T*)^{-1} z D_T.
inline ComplexMatrix characteristic_function(const ComplexMatrix& T, Complex z) {
  require(T.dim() >= 1 && T.all_finite(), "characteristic_function: bad matrix");
  const double sr = spectral_radius_gelfand(T);
  require(sr < 1.0 + 1e-10, "characteristic_function: spectral radius must be < 1");
  const auto d = defect_operators(T);
  const ComplexMatrix eye = ComplexMatrix::identity(T.dim());
  const ComplexMatrix lhs = eye - z * T.adjoint();
  ComplexMatrix resolvent;
  try {
    resolvent = inverse(lhs);
  } catch (const NumericalError&) {
    throw NumericalError("characteristic_function: I - z T* is singular");
  }
  return (Complex{-1.0, 0.0}) * T + d.d_t_star * resolvent * (z * d.d_t);
}

/// Model transform value -e^{i phi} Theta_T(z) D_T at the chart point
/// (phi, z) of the disk automorphism group.
inline ComplexMatrix functional_model_transform(const ComplexMatrix& T, double phi, Complex z) {
  require(std::abs(z) < 1.0, "functional_model_transform: |z| must be < 1");
  const auto d = defect_operators(T);
  const ComplexMatrix theta = characteristic_function(T, z);
  return (-std::polar(1.0, phi)) * (theta * d.d_t);
}

/// Gap || D_{(g.T)*} - | -e^{i phi} Theta_T(z) D_T | ||_F between the defect
/// of the moved contraction and the modulus of the model value. The two do
/// not agree in general (already visibly in the scalar case); this reports
/// the discrepancy instead of asserting it away.
inline double functional_model_defect_diagnostic(const ComplexMatrix& T, double phi,
                                                 Complex z) {
  const Su11Element g = su11_from_phi_z(phi, z);
  const ComplexMatrix moved = mobius_on_operator(g, T);
  const ComplexMatrix moved_defect = defect_operators(moved).d_t_star;
  const ComplexMatrix w = functional_model_transform(T, phi, z);
  const ComplexMatrix modulus = hermitian_sqrt(w.adjoint() * w);
  return (moved_defect - modulus).frobenius_norm();
}

/// Orbit samples <A rho(g) x, rho(g) x> for unit x and unitary rho(g); all
/// values lie in the numerical range of A.
inline std::vector<Complex> numerical_range_sample(const ComplexMatrix& A,
                                                   const ComplexVector& x,
                                                   const std::vector<ComplexMatrix>& gs) {
  require(A.dim() == x.size(), "numerical_range_sample: dimension mismatch");
  require(std::abs(vec_norm(x) - 1.0) <= 1e-10, "numerical_range_sample: x must be unit");
  const ComplexMatrix eye = ComplexMatrix::identity(A.dim());
  std::vector<Complex> out;
  out.reserve(gs.size());
  for (const auto& u : gs) {
    require(u.dim() == A.dim(), "numerical_range_sample: dimension mismatch");
    require((u.adjoint() * u - eye).max_abs() <= 1e-10,
            "numerical_range_sample: representation matrices must be unitary");
    const ComplexVector ux = mat_vec(u, x);
    out.push_back(dot(mat_vec(A, ux), ux));
  }
  return out;
}

/// Two-group matrix coefficient <A rho1(g1) x, rho2(g2) l>.
inline Complex berezin_transform(const ComplexMatrix& A, const ComplexMatrix& rho1_g1,
                                 const ComplexMatrix& rho2_g2, const ComplexVector& x,
                                 const ComplexVector& l) {
  require(A.dim() == rho1_g1.dim() && A.dim() == rho2_g2.dim() && A.dim() == x.size() &&
              A.dim() == l.size(),
          "berezin_transform: dimension mismatch");
  return dot(mat_vec(A, mat_vec(rho1_g1, x)), mat_vec(rho2_g2, l));
}

}  // namespace covtrans
