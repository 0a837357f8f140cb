#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "covtrans/groups.hpp"

using namespace covtrans;

namespace {

std::mt19937_64 rng(20240811u);

AffinePoint random_affine() {
  std::uniform_real_distribution<double> la(-2.0, 2.0), b(-5.0, 5.0);
  return {std::exp(la(rng)), b(rng)};
}

Sl2Element random_sl2() {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  // Shear * rotation * shear keeps the determinant at one by construction.
  Sl2Element s1{1.0, u(rng), 0.0, 1.0};
  Sl2Element s2{1.0, 0.0, u(rng), 1.0};
  return sl2_compose(sl2_compose(s1, sl2_rotation(u(rng))), s2);
}

Su11Element random_su11() {
  std::uniform_real_distribution<double> phi(-3.0, 3.0), r(0.0, 0.8), arg(0.0, 2.0 * kPi);
  return su11_from_phi_z(phi(rng), std::polar(r(rng), arg(rng)));
}

Se2Element random_se2() {
  std::uniform_real_distribution<double> th(-4.0, 4.0), t(-3.0, 3.0);
  return make_se2(th(rng), t(rng), t(rng));
}

double affine_dist(const AffinePoint& g, const AffinePoint& h) {
  return std::max(std::abs(g.a - h.a), std::abs(g.b - h.b));
}

double sl2_dist(const Sl2Element& g, const Sl2Element& h) {
  return std::max(std::max(std::abs(g.a - h.a), std::abs(g.b - h.b)),
                  std::max(std::abs(g.c - h.c), std::abs(g.d - h.d)));
}

}  // namespace

TEST_CASE("affine composition matches the group law") {
  const AffinePoint g{2.0, 1.0}, h{3.0, 4.0};
  const AffinePoint gh = affine_compose(g, h);
  CHECK(gh.a == Catch::Approx(6.0));
  CHECK(gh.b == Catch::Approx(9.0));

  const AffinePoint any{1.7, -0.3};
  const AffinePoint id_any = affine_compose(affine_identity(), any);
  CHECK(affine_dist(id_any, any) < 1e-15);

  const AffinePoint k = affine_compose(AffinePoint{2.0, 1.0}, AffinePoint{0.5, -0.5});
  CHECK(affine_dist(k, affine_identity()) < 1e-15);
}

TEST_CASE("affine inverse") {
  CHECK(affine_dist(affine_inverse(affine_identity()), affine_identity()) == 0.0);
  const AffinePoint inv = affine_inverse({2.0, 1.0});
  CHECK(inv.a == Catch::Approx(0.5));
  CHECK(inv.b == Catch::Approx(-0.5));
  const AffinePoint inv2 = affine_inverse({4.0, -8.0});
  CHECK(inv2.a == Catch::Approx(0.25));
  CHECK(inv2.b == Catch::Approx(2.0));
  CHECK(affine_dist(affine_compose(AffinePoint{4.0, -8.0}, inv2), affine_identity()) < 1e-14);
}

TEST_CASE("affine haar weight") {
  CHECK(affine_haar_weight(1.0) == Catch::Approx(1.0));
  CHECK(affine_haar_weight(2.0) == Catch::Approx(0.25));
  CHECK(affine_haar_weight(0.5) == Catch::Approx(4.0));
  CHECK_THROWS_AS(affine_haar_weight(0.0), PreconditionError);
  CHECK_THROWS_AS(affine_haar_weight(-1.0), PreconditionError);
}

TEST_CASE("sl2 compose, inverse, renormalization") {
  const Sl2Element a = make_sl2(1, 1, 0, 1);
  const Sl2Element b = make_sl2(1, 0, 1, 1);
  const Sl2Element ab = sl2_compose(a, b);
  CHECK(ab.a == Catch::Approx(2.0));
  CHECK(ab.b == Catch::Approx(1.0));
  CHECK(ab.c == Catch::Approx(1.0));
  CHECK(ab.d == Catch::Approx(1.0));

  const Sl2Element d = make_sl2(2.0, 0.0, 0.0, 0.5);
  const Sl2Element dinv = sl2_inverse(d);
  CHECK(dinv.a == Catch::Approx(0.5));
  CHECK(dinv.d == Catch::Approx(2.0));

  Sl2Element w = sl2_identity();
  for (int i = 0; i < 200; ++i) w = sl2_compose(w, random_sl2());
  CHECK(std::abs(w.det() - 1.0) <= 1e-12);
}

TEST_CASE("su11 factorization") {
  const Su11Element id = su11_from_phi_z(0.0, {0.0, 0.0});
  CHECK(std::abs(id.alpha - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(id.beta) < 1e-15);

  const Su11Element rot = su11_from_phi_z(kPi, {0.0, 0.0});
  CHECK(std::abs(rot.alpha - Complex{0.0, 1.0}) < 1e-14);
  CHECK(std::abs(rot.beta) < 1e-15);

  const Su11Element mix = su11_from_phi_z(0.0, {0.5, 0.0});
  const double s = 1.0 / std::sqrt(0.75);
  CHECK(std::abs(mix.alpha - Complex{s, 0.0}) < 1e-14);
  CHECK(std::abs(mix.beta - Complex{-0.5 * s, 0.0}) < 1e-14);

  CHECK_THROWS_AS(su11_from_phi_z(0.0, {1.0, 0.0}), PreconditionError);

  for (int i = 0; i < 100; ++i) CHECK(std::abs(su11_defect(random_su11())) < 1e-14);
}

TEST_CASE("se2 apply") {
  const auto p = se2_apply(se2_identity(), {1.0, 2.0});
  CHECK(p[0] == Catch::Approx(1.0));
  CHECK(p[1] == Catch::Approx(2.0));

  const auto q = se2_apply(make_se2(kPi / 2.0, 0.0, 0.0), {1.0, 0.0});
  CHECK(q[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(q[1] == Catch::Approx(1.0));

  const auto r = se2_apply(make_se2(0.0, 3.0, -1.0), {1.0, 1.0});
  CHECK(r[0] == Catch::Approx(4.0));
  CHECK(r[1] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("associativity and inverse law in all four groups") {
  for (int i = 0; i < 100; ++i) {
    const auto g = random_affine(), h = random_affine(), k = random_affine();
    CHECK(affine_dist(affine_compose(affine_compose(g, h), k),
                      affine_compose(g, affine_compose(h, k))) <= 1e-12);
    CHECK(affine_dist(affine_compose(g, affine_inverse(g)), affine_identity()) <= 1e-12);

    const auto a = random_sl2(), b = random_sl2(), c = random_sl2();
    CHECK(sl2_dist(sl2_compose(sl2_compose(a, b), c), sl2_compose(a, sl2_compose(b, c))) <=
          1e-12);
    CHECK(sl2_dist(sl2_compose(a, sl2_inverse(a)), sl2_identity()) <= 1e-12);

    const auto u = random_su11(), v = random_su11(), w = random_su11();
    const auto lhs = su11_compose(su11_compose(u, v), w);
    const auto rhs = su11_compose(u, su11_compose(v, w));
    CHECK(std::abs(lhs.alpha - rhs.alpha) <= 1e-12);
    CHECK(std::abs(lhs.beta - rhs.beta) <= 1e-12);
    const auto uinv = su11_compose(u, su11_inverse(u));
    CHECK(std::abs(uinv.alpha - Complex{1.0, 0.0}) <= 1e-12);
    CHECK(std::abs(uinv.beta) <= 1e-12);

    const auto s = random_se2(), t = random_se2(), z = random_se2();
    const auto l2 = se2_compose(se2_compose(s, t), z);
    const auto r2 = se2_compose(s, se2_compose(t, z));
    CHECK(std::abs(normalize_angle(l2.theta - r2.theta)) <= 1e-12);
    CHECK(std::abs(l2.tx - r2.tx) <= 1e-12);
    CHECK(std::abs(l2.ty - r2.ty) <= 1e-12);
    const auto sid = se2_compose(s, se2_inverse(s));
    CHECK(std::abs(sid.theta) <= 1e-12);
    CHECK(std::abs(sid.tx) <= 1e-12);
    CHECK(std::abs(sid.ty) <= 1e-12);
  }
}

TEST_CASE("se2 action respects composition") {
  for (int i = 0; i < 50; ++i) {
    const auto g = random_se2(), h = random_se2();
    const std::array<double, 2> p{0.7, -1.3};
    const auto lhs = se2_apply(g, se2_apply(h, p));
    const auto rhs = se2_apply(se2_compose(g, h), p);
    CHECK(std::abs(lhs[0] - rhs[0]) <= 1e-12);
    CHECK(std::abs(lhs[1] - rhs[1]) <= 1e-12);
  }
}

TEST_CASE("affine grid construction") {
  const AffineGrid g = make_affine_grid(1.0, 4.0, 3, 0.0, 1.0, 2);
  REQUIRE(g.aValues.size() == 3);
  CHECK(g.aValues[0] == Catch::Approx(1.0));
  CHECK(g.aValues[1] == Catch::Approx(2.0));
  CHECK(g.aValues[2] == Catch::Approx(4.0));
  REQUIRE(g.bValues.size() == 2);
  CHECK(g.bValues[0] == Catch::Approx(0.0));
  CHECK(g.bValues[1] == Catch::Approx(1.0));

  const AffineGrid h = make_affine_grid(0.25, 1.0, 3, -1.0, 1.0, 3);
  CHECK(h.aValues[0] == Catch::Approx(0.25));
  CHECK(h.aValues[1] == Catch::Approx(0.5));
  CHECK(h.aValues[2] == Catch::Approx(1.0));
  CHECK(h.bValues[1] == Catch::Approx(0.0).margin(1e-15));

  CHECK_THROWS_AS(make_affine_grid(1.0, 4.0, 1, 0.0, 1.0, 2), PreconditionError);
  CHECK_THROWS_AS(make_affine_grid(4.0, 1.0, 3, 0.0, 1.0, 2), PreconditionError);

  const AffineGrid wide = make_affine_grid(1.0 / 64.0, 16.0, 64, -8.0, 8.0, 512);
  CHECK(affine_grid_ratio_defect(wide) <= 1e-12);
}

TEST_CASE("left haar sum is invariant under left translation, to quadrature order") {
  // Smooth bump against the invariant weight: the translated lattice sum
  // approaches the untranslated one at second order in the mesh.
  const AffinePoint g0{2.0, 0.5};
  const auto bump = [](const AffinePoint& g) {
    const double la = std::log(g.a);
    const double r2 = la * la + g.b * g.b;
    return r2 < 1.0 ? std::pow(1.0 - r2, 3) : 0.0;
  };
  const auto lattice_gap = [&](std::size_t nA, std::size_t nB) {
    const AffineGrid grid = make_affine_grid(1.0 / 64.0, 64.0, nA, -24.0, 24.0, nB);
    const double dla = grid.log_step();
    const double db = grid.b_step();
    double plain = 0.0, moved = 0.0;
    for (double a : grid.aValues)
      for (double b : grid.bValues) {
        const AffinePoint g{a, b};
        // weight a^{-2} da db = a^{-1} d(log a) db
        plain += bump(g) / a * dla * db;
        moved += bump(affine_compose(g0, g)) / a * dla * db;
      }
    return std::abs(plain - moved);
  };
  const double coarse = lattice_gap(97, 385);
  const double fine = lattice_gap(193, 769);
  CHECK(coarse < 2e-3);
  CHECK(fine < coarse / 2.0);
}
