#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "llgs/brownian.hpp"

using namespace llgs;

TEST_SUITE("brownian") {

TEST_CASE("determinism and stream splitting") {
  const BrownianPath a = generate_path(1234, 64, 0.5, 3);
  const BrownianPath b = generate_path(1234, 64, 0.5, 3);
  CHECK(a.increments == b.increments);
  CHECK(split_seed(42, 0) != split_seed(42, 1));
  CHECK(split_seed(42, 0) != split_seed(43, 0));
  const BrownianPath c = generate_path(split_seed(42, 1), 64, 0.5, 3);
  CHECK(a.increments != c.increments);
}

TEST_CASE("increment statistics") {
  const std::size_t n = 1'000'000;
  const double dt = 0.25;
  const BrownianPath p = generate_path(777, n, dt, 1);
  double sum = 0.0, sum2 = 0.0;
  for (double v : p.increments) {
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum2 / static_cast<double>(n) - mean * mean;
  const double se = std::sqrt(dt / static_cast<double>(n));
  CHECK(std::fabs(mean) < 4.0 * se);
  CHECK(std::fabs(var - dt) < 0.01 * dt);
}

TEST_CASE("coarsening") {
  const BrownianPath p = generate_path(5, 256, 0.125, 3);
  SUBCASE("factor 1 is the identity") {
    CHECK(coarsen(p, 1).increments == p.increments);
  }
  SUBCASE("twice by 2 equals once by 4, bit-exact") {
    const BrownianPath a = coarsen(coarsen(p, 2), 2);
    const BrownianPath b = coarsen(p, 4);
    CHECK(a.increments == b.increments);
    CHECK(a.base_dt == b.base_dt);
  }
  SUBCASE("terminal value preserved bit-exactly for power-of-two factors") {
    const auto w0 = p.terminal();
    for (std::size_t f : {2u, 4u, 8u, 32u}) {
      const auto w = coarsen(p, f).terminal();
      CHECK(w == w0);
    }
  }
  SUBCASE("non-divisible factor rejected") {
    CHECK_THROWS_AS(coarsen(p, 3), std::invalid_argument);
    CHECK_THROWS_AS(coarsen(p, 0), std::invalid_argument);
  }
}

TEST_CASE("binary dump and load") {
  const BrownianPath p = generate_path(909, 50, 0.01, 3);
  const std::string file = (std::filesystem::temp_directory_path() / "llgs_path_test.bin").string();
  save_path(p, file);
  const BrownianPath q = load_path(file);
  CHECK(q.seed == p.seed);
  CHECK(q.base_dt == p.base_dt);
  CHECK(q.dims == p.dims);
  CHECK(q.increments == p.increments);
  std::remove(file.c_str());
}

}  // TEST_SUITE
