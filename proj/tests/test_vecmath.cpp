#include <doctest.h>

#include <random>

#include "llgs/vec3.hpp"
#include "test_util.hpp"

using namespace llgs;

TEST_SUITE("vecmath") {

TEST_CASE("cross basis identities") {
  CHECK(cross({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, 1});
  CHECK(cross({1, 0, 0}, {0, 0, 1}) == Vec3{0, -1, 0});
  const Vec3 a{0.3, -1.2, 2.2};
  CHECK(cross(a, a) == Vec3{0, 0, 0});
}

TEST_CASE("cross is antisymmetric and bilinear") {
  std::mt19937_64 eng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = test::random_vec(eng, 2.0), b = test::random_vec(eng, 2.0);
    const Vec3 ab = cross(a, b), ba = cross(b, a);
    CHECK((ab + ba).norm() == 0.0);  // componentwise products are identical
    const Vec3 lin = cross(a + b * 2.0, b) - cross(a, b);
    CHECK(lin.norm() < 1e-12 * (1.0 + a.norm() * b.norm()));
  }
}

TEST_CASE("skew matches cross product") {
  CHECK(skew({0, 0, 0}).max_abs() == 0.0);
  const Mat3 s = skew({0, 0, 1});
  CHECK(s(0, 0) == 0.0);
  CHECK(s(0, 1) == -1.0);
  CHECK(s(0, 2) == 0.0);
  CHECK(s(1, 0) == 1.0);
  CHECK(s(2, 2) == 0.0);

  std::mt19937_64 eng(42);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = test::random_vec(eng, 3.0), b = test::random_vec(eng, 3.0);
    CHECK((skew(a) * b - cross(a, b)).norm() == 0.0);
    // antisymmetry by construction
    const Mat3 sum = skew(a) + skew(a).transposed();
    CHECK(sum.max_abs() == 0.0);
  }
}

TEST_CASE("spherical basis") {
  {
    const auto [th, ph] = spherical_basis(std::numbers::pi / 2, 0.0);
    CHECK(th.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(th.z == doctest::Approx(-1.0));
    CHECK(ph.y == doctest::Approx(1.0));
  }
  {
    const auto [th, ph] = spherical_basis(0.0, 0.0);
    CHECK(th.x == doctest::Approx(1.0));
    CHECK(ph.y == doctest::Approx(1.0));
  }
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> uth(0.0, std::numbers::pi), uph(-std::numbers::pi,
                                                                         std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const double theta = uth(eng), phi = uph(eng);
    const auto [th, ph] = spherical_basis(theta, phi);
    CHECK(std::fabs(dot(th, ph)) < 1e-15);
    CHECK(th.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ph.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // right-handed frame: theta_hat x phi_hat points along m
    CHECK((cross(th, ph) - to_cartesian(theta, phi)).norm() < 1e-14);
  }
}

TEST_CASE("spherical round trips") {
  CHECK(to_spherical({0, 0, 1}).first == 0.0);
  CHECK(to_spherical({0, 0, 1}).second == 0.0);  // pole convention phi = 0
  CHECK(to_spherical({0, 0, -1}).second == 0.0);
  const Vec3 y = to_cartesian(std::numbers::pi / 2, std::numbers::pi / 2);
  CHECK((y - Vec3{0, 1, 0}).norm() < 1e-15);

  std::mt19937_64 eng(1234);
  for (int i = 0; i < 200; ++i) {
    const Vec3 m = test::random_unit(eng);
    const auto [theta, phi] = to_spherical(m);
    CHECK((to_cartesian(theta, phi) - m).norm() < 1e-14);
  }
  CHECK_THROWS_AS(to_spherical({0, 0, 0}), std::domain_error);
}

TEST_CASE("solve3 recovers solutions") {
  std::mt19937_64 eng(5);
  for (int i = 0; i < 50; ++i) {
    Mat3 A;
    for (int k = 0; k < 9; ++k) A.a[static_cast<std::size_t>(k)] =
        std::normal_distribution<double>(0.0, 1.0)(eng);
    A = A + 3.0 * Mat3::identity();
    const Vec3 x = test::random_vec(eng, 2.0);
    const Vec3 b = A * x;
    CHECK((solve3(A, b) - x).norm() < 1e-10);
  }
}

}  // TEST_SUITE
