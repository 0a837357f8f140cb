#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "covtrans/opmodel.hpp"

using namespace covtrans;

namespace {

std::mt19937_64 rng(4242u);

ComplexMatrix random_matrix(std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex{u(rng), u(rng)};
  return m;
}

ComplexMatrix random_contraction(std::size_t n, double radius = 0.85) {
  ComplexMatrix m = random_matrix(n);
  const double norm = operator_norm_2(m);
  return Complex{radius / std::max(norm, 1e-12), 0.0} * m;
}

ComplexMatrix scalar(Complex v) {
  ComplexMatrix m(1);
  m(0, 0) = v;
  return m;
}

Su11Element random_su11_element() {
  std::uniform_real_distribution<double> phi(-3.0, 3.0), r(0.0, 0.75), arg(0.0, 2.0 * kPi);
  return su11_from_phi_z(phi(rng), std::polar(r(rng), arg(rng)));
}

ComplexVector random_unit(std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexVector x(n);
  for (auto& v : x) v = Complex{u(rng), u(rng)};
  const double norm = vec_norm(x);
  for (auto& v : x) v /= norm;
  return x;
}

}  // namespace

TEST_CASE("hermitian sqrt on diagonal and random PSD input") {
  CHECK((hermitian_sqrt(ComplexMatrix::identity(3)) - ComplexMatrix::identity(3)).max_abs() <
        1e-12);

  ComplexMatrix d(2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const ComplexMatrix s = hermitian_sqrt(d);
  CHECK(std::abs(s(0, 0) - Complex{2.0, 0.0}) < 1e-12);
  CHECK(std::abs(s(1, 1) - Complex{3.0, 0.0}) < 1e-12);

  for (std::size_t n : {2u, 5u, 8u}) {
    const ComplexMatrix a = random_matrix(n);
    const ComplexMatrix psd = a.adjoint() * a;
    const ComplexMatrix r = hermitian_sqrt(psd);
    CHECK((r * r - psd).max_abs() < 1e-10);
    CHECK((r - r.adjoint()).max_abs() < 1e-11);
    // Norm consistency of the root.
    CHECK(operator_norm_2(r) * operator_norm_2(r) ==
          Catch::Approx(operator_norm_2(psd)).margin(1e-8));
  }

  ComplexMatrix indef(2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -0.5;
  CHECK_THROWS_AS(hermitian_sqrt(indef), PreconditionError);
}

TEST_CASE("defect operators") {
  const auto z = defect_operators(scalar({0.0, 0.0}));
  CHECK(std::abs(z.d_t(0, 0) - Complex{1.0, 0.0}) < 1e-14);

  const auto s = defect_operators(scalar({0.6, 0.0}));
  CHECK(std::abs(s.d_t(0, 0) - Complex{0.8, 0.0}) < 1e-12);
  CHECK(std::abs(s.d_t_star(0, 0) - Complex{0.8, 0.0}) < 1e-12);

  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix t = random_contraction(4);
    const auto d = defect_operators(t);
    CHECK((t * d.d_t - d.d_t_star * t).max_abs() < 1e-9);
  }

  CHECK_THROWS_AS(defect_operators(scalar({1.5, 0.0})), PreconditionError);
}

TEST_CASE("gelfand spectral radius") {
  CHECK(spectral_radius_gelfand(scalar({0.5, 0.0})) == Catch::Approx(0.5).margin(1e-9));

  ComplexMatrix nil(2);
  nil(0, 1) = 1.0;
  CHECK(spectral_radius_gelfand(nil) == Catch::Approx(0.0).margin(1e-6));

  ComplexMatrix d(2);
  d(0, 0) = 0.3;
  d(1, 1) = -0.9;
  CHECK(spectral_radius_gelfand(d) == Catch::Approx(0.9).margin(1e-6));

  // Highly non-normal: large norm, spectrum {0.5}.
  ComplexMatrix j(2);
  j(0, 0) = 0.5; j(0, 1) = 40.0; j(1, 1) = 0.5;
  CHECK(spectral_radius_gelfand(j) == Catch::Approx(0.5).margin(2e-4));
}

TEST_CASE("characteristic function") {
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix t = random_contraction(4);
    const ComplexMatrix theta0 = characteristic_function(t, {0.0, 0.0});
    CHECK((theta0 + t).max_abs() < 1e-13);
  }

  // Scalar case collapses to the disk automorphism (z - t)/(1 - t z).
  const double t = 0.5;
  const Complex z{0.3, 0.0};
  const ComplexMatrix theta = characteristic_function(scalar({t, 0.0}), z);
  CHECK(std::abs(theta(0, 0) - Complex{-0.2 / 0.85, 0.0}) < 1e-12);

  std::uniform_real_distribution<double> ts(-0.9, 0.9), args(0.0, 2.0 * kPi);
  for (int i = 0; i < 64; ++i) {
    const double tv = ts(rng);
    const Complex zv = std::polar(1.0, args(rng));  // boundary point
    const ComplexMatrix th = characteristic_function(scalar({tv, 0.0}), zv);
    CHECK(std::abs(std::abs(th(0, 0)) - 1.0) < 1e-10);
    const Complex zin = std::polar(0.95, args(rng));
    const ComplexMatrix thin = characteristic_function(scalar({tv, 0.0}), zin);
    CHECK(std::abs(thin(0, 0)) < 1.0);
  }
}

TEST_CASE("functional model transform") {
  const ComplexMatrix t = random_contraction(3);
  const auto d = defect_operators(t);
  const ComplexMatrix w0 = functional_model_transform(t, 0.0, {0.0, 0.0});
  CHECK((w0 - t * d.d_t).max_abs() < 1e-12);

  const ComplexMatrix s = functional_model_transform(scalar({0.5, 0.0}), 0.0, {0.3, 0.0});
  CHECK(std::abs(s(0, 0) - Complex{(0.2 / 0.85) * std::sqrt(0.75), 0.0}) < 1e-12);
  CHECK(s(0, 0).real() == Catch::Approx(0.203771).margin(5e-7));

  const ComplexMatrix w1 = functional_model_transform(t, 1.3, {0.2, 0.1});
  const ComplexMatrix w2 = functional_model_transform(t, 1.3 + 2.0 * kPi, {0.2, 0.1});
  CHECK((w1 - w2).max_abs() < 1e-12);
}

TEST_CASE("model-vs-moved-defect diagnostic reports the scalar discrepancy") {
  const double t = 0.5, phi = 0.7;
  const Complex z{0.3, 0.2};
  // Closed forms for the two sides in the scalar case.
  const double dt = std::sqrt(1.0 - t * t);
  const Complex one_minus = 1.0 - std::conj(z) * t;
  const double moved_defect = std::sqrt((1.0 - std::norm(z)) * (1.0 - t * t)) / std::abs(one_minus);
  const double model_modulus = std::abs(z - t) * dt / std::abs(one_minus);
  const double expected = std::abs(moved_defect - model_modulus);
  CHECK(expected > 1e-3);  // genuinely different readings
  CHECK(functional_model_defect_diagnostic(scalar({t, 0.0}), phi, z) ==
        Catch::Approx(expected).margin(1e-9));
}

TEST_CASE("numerical range samples") {
  const std::size_t n = 4;
  // Unitary orbit from random Hermitian generators.
  std::vector<ComplexMatrix> gs;
  for (int i = 0; i < 16; ++i) {
    ComplexMatrix h = random_matrix(n);
    h = Complex{0.5, 0.0} * (h + h.adjoint());
    const auto eig = jacobi_hermitian(h);
    ComplexMatrix u(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t k = 0; k < n; ++k)
          u(r, c) += eig.vectors(r, k) * std::polar(1.0, eig.values[k]) *
                     std::conj(eig.vectors(c, k));
    gs.push_back(u);
  }
  const ComplexVector x = random_unit(n);

  const auto ones = numerical_range_sample(ComplexMatrix::identity(n), x, gs);
  for (const auto& v : ones) CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-10);

  ComplexMatrix herm = random_matrix(n);
  herm = Complex{0.5, 0.0} * (herm + herm.adjoint());
  const auto eig = jacobi_hermitian(herm);
  const auto samples = numerical_range_sample(herm, x, gs);
  for (const auto& v : samples) {
    CHECK(std::abs(v.imag()) < 1e-10);
    CHECK(v.real() >= eig.values.front() - 1e-10);
    CHECK(v.real() <= eig.values.back() + 1e-10);
  }

  // Support-function bound for a generic matrix.
  const ComplexMatrix a = random_matrix(n);
  const auto pts = numerical_range_sample(a, x, gs);
  for (int k = 0; k < 64; ++k) {
    const double th = 2.0 * kPi * k / 64.0;
    const Complex rot = std::polar(1.0, -th);
    ComplexMatrix re = Complex{0.5, 0.0} * (rot * a + (rot * a).adjoint());
    const double top = jacobi_hermitian(re).values.back();
    for (const auto& v : pts) CHECK((rot * v).real() <= top + 1e-8);
  }

  // Global phase of x is immaterial.
  ComplexVector xp = x;
  for (auto& v : xp) v *= std::polar(1.0, 1.234);
  const auto again = numerical_range_sample(a, xp, gs);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(again[i] - pts[i]) < 1e-10);
}

TEST_CASE("berezin transform against a direct two-loop sum") {
  const std::size_t n = 3;
  const ComplexMatrix a = random_matrix(n);
  const ComplexMatrix r1 = random_matrix(n);
  const ComplexMatrix r2 = random_matrix(n);
  const ComplexVector x = random_unit(n);
  const ComplexVector l = random_unit(n);

  Complex direct{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    Complex ax{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      Complex rx{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) rx += r1(j, k) * x[k];
      ax += a(i, j) * rx;
    }
    Complex rl{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) rl += r2(i, k) * l[k];
    direct += ax * std::conj(rl);
  }
  CHECK(std::abs(berezin_transform(a, r1, r2, x, l) - direct) < 1e-12);

  const ComplexMatrix eye = ComplexMatrix::identity(n);
  CHECK(std::abs(berezin_transform(a, eye, eye, x, l) - dot(mat_vec(a, x), l)) < 1e-14);
  CHECK(std::abs(berezin_transform(eye, r1, r1, x, x) -
                 dot(mat_vec(r1, x), mat_vec(r1, x))) < 1e-14);
}

TEST_CASE("mobius action on operators") {
  const ComplexMatrix t = random_contraction(3);
  const ComplexMatrix same = mobius_on_operator(su11_identity(), t);
  CHECK((same - t).max_abs() < 1e-12);

  // Diagonal phase element rotates the operator.
  const Su11Element ph = su11_from_phi_z(1.1, {0.0, 0.0});
  const ComplexMatrix rot = mobius_on_operator(ph, t);
  CHECK((rot - std::polar(1.0, 1.1) * t).max_abs() < 1e-12);

  for (int i = 0; i < 100; ++i) {
    const Su11Element g1 = random_su11_element();
    const Su11Element g2 = random_su11_element();
    const ComplexMatrix tt = random_contraction(3);
    const ComplexMatrix lhs = mobius_on_operator(su11_compose(g1, g2), tt);
    const ComplexMatrix rhs = mobius_on_operator(g1, mobius_on_operator(g2, tt));
    CHECK((lhs - rhs).max_abs() < 1e-10);
    CHECK(spectral_radius_gelfand(mobius_on_operator(g1, tt)) < 1.0);
  }

  CHECK_THROWS_AS(mobius_on_operator(su11_identity(), scalar({1.2, 0.0})),
                  PreconditionError);
}
