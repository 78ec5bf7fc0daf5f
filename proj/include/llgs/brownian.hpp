#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "llgs/vec3.hpp"

namespace llgs {

// Stream-splittable seeding: path i of an ensemble draws from
// mix(master_seed, i), so results do not depend on execution order.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

// Deterministic standard-normal stream (Box-Muller on explicit 53-bit
// uniforms; std::normal_distribution is implementation-defined).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}
  double next();

 private:
  double uniform();  // in (0, 1]
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Pre-drawn Wiener increments at a base resolution. Layout is step-major:
// increments[step * dims + d] ~ N(0, base_dt).
struct BrownianPath {
  std::uint64_t seed = 0;
  double base_dt = 0.0;
  std::uint32_t dims = 0;
  std::vector<double> increments;

  std::size_t n_steps() const { return dims ? increments.size() / dims : 0; }
  double scalar(std::size_t step) const { return increments[step]; }
  Vec3 vec3(std::size_t step) const {
    const double* p = increments.data() + 3 * step;
    return {p[0], p[1], p[2]};
  }
  // Terminal value W(T) per dimension.
  std::vector<double> terminal() const;
};

BrownianPath generate_path(std::uint64_t seed, std::size_t n_steps, double base_dt, int dims);

// Sums groups of `factor` consecutive increments; the terminal value is
// preserved bit-exactly only up to summation order, which we keep fixed.
BrownianPath coarsen(const BrownianPath& path, std::size_t factor);

// Little-endian binary dump: u64 seed, f64 base_dt, u64 n_steps, u64 dims,
// then n_steps*dims f64 increments.
void save_path(const BrownianPath& path, const std::string& filename);
BrownianPath load_path(const std::string& filename);

}  // namespace llgs
