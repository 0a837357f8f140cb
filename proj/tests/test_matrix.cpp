#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "covtrans/matrix.hpp"

using namespace covtrans;

namespace {

std::mt19937_64 rng(77u);

ComplexMatrix random_matrix(std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = scale * Complex{u(rng), u(rng)};
  return m;
}

ComplexMatrix random_hermitian(std::size_t n) {
  ComplexMatrix m = random_matrix(n);
  return Complex{0.5, 0.0} * (m + m.adjoint());
}

}  // namespace

TEST_CASE("inverse solves to identity") {
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const ComplexMatrix m = random_matrix(n) + Complex{2.0, 0.0} * ComplexMatrix::identity(n);
    const ComplexMatrix r = m * inverse(m) - ComplexMatrix::identity(n);
    CHECK(r.max_abs() < 1e-12);
  }
}

TEST_CASE("inverse rejects singular input") {
  ComplexMatrix m(2);
  m(0, 0) = 1.0; m(0, 1) = 2.0;
  m(1, 0) = 2.0; m(1, 1) = 4.0;
  CHECK_THROWS_AS(inverse(m), NumericalError);
}

TEST_CASE("jacobi reconstructs hermitian matrices") {
  for (std::size_t n : {2u, 4u, 8u}) {
    const ComplexMatrix h = random_hermitian(n);
    const auto eig = jacobi_hermitian(h);
    ComplexMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = eig.values[i];
    const ComplexMatrix rebuilt = eig.vectors * d * eig.vectors.adjoint();
    CHECK((rebuilt - h).max_abs() < 1e-11);
    const ComplexMatrix vv = eig.vectors.adjoint() * eig.vectors;
    CHECK((vv - ComplexMatrix::identity(n)).max_abs() < 1e-12);
    for (std::size_t i = 1; i < n; ++i) CHECK(eig.values[i - 1] <= eig.values[i]);
  }
}

TEST_CASE("jacobi rejects non-hermitian input") {
  ComplexMatrix m(2);
  m(0, 1) = Complex{1.0, 0.0};
  m(1, 0) = Complex{0.5, 0.0};
  CHECK_THROWS_AS(jacobi_hermitian(m), PreconditionError);
}

TEST_CASE("operator norm agrees with known values") {
  ComplexMatrix d(2);
  d(0, 0) = Complex{3.0, 0.0};
  d(1, 1) = Complex{0.0, -4.0};
  CHECK(operator_norm_2(d) == Catch::Approx(4.0).epsilon(1e-10));

  ComplexMatrix n(2);
  n(0, 1) = Complex{2.0, 0.0};
  CHECK(operator_norm_2(n) == Catch::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("matrix vector plumbing") {
  ComplexMatrix m(2);
  m(0, 0) = 1.0; m(0, 1) = Complex{0.0, 1.0};
  m(1, 0) = 2.0; m(1, 1) = -1.0;
  const ComplexVector x{Complex{1.0, 0.0}, Complex{0.0, 1.0}};
  const ComplexVector y = mat_vec(m, x);
  CHECK(std::abs(y[0] - Complex{0.0, 0.0}) < 1e-15);
  CHECK(std::abs(y[1] - Complex{2.0, -1.0}) < 1e-15);
  CHECK(std::abs(dot(x, x) - Complex{2.0, 0.0}) < 1e-15);
}
