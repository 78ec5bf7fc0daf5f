#include "llgs/brownian.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace llgs {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer applied to the combined word, twice.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  for (int i = 0; i < 2; ++i) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
  }
  return z;
}

double GaussianStream::uniform() {
  return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::vector<double> BrownianPath::terminal() const {
  // Adjacent-pairwise reduction; coarsening by powers of two collapses the
  // same tree one level up, so the terminal value is preserved bit-exactly.
  std::vector<double> w;
  w.reserve(dims);
  std::vector<double> level;
  for (std::uint32_t d = 0; d < dims; ++d) {
    level.clear();
    for (std::size_t s = 0; s < n_steps(); ++s) level.push_back(increments[s * dims + d]);
    while (level.size() > 1) {
      std::size_t out = 0;
      for (std::size_t i = 0; i + 1 < level.size(); i += 2) level[out++] = level[i] + level[i + 1];
      if (level.size() % 2 == 1) level[out++] = level.back();
      level.resize(out);
    }
    w.push_back(level.empty() ? 0.0 : level[0]);
  }
  return w;
}

BrownianPath generate_path(std::uint64_t seed, std::size_t n_steps, double base_dt, int dims) {
  if (n_steps < 1) throw std::invalid_argument("generate_path: n_steps must be >= 1");
  if (base_dt <= 0.0) throw std::invalid_argument("generate_path: base_dt must be > 0");
  if (dims < 1) throw std::invalid_argument("generate_path: dims must be >= 1");
  BrownianPath p;
  p.seed = seed;
  p.base_dt = base_dt;
  p.dims = static_cast<std::uint32_t>(dims);
  p.increments.resize(n_steps * p.dims);
  GaussianStream g(seed);
  const double s = std::sqrt(base_dt);
  for (double& v : p.increments) v = s * g.next();
  return p;
}

BrownianPath coarsen(const BrownianPath& path, std::size_t factor) {
  if (factor == 0 || path.n_steps() % factor != 0)
    throw std::invalid_argument("coarsen: factor must divide n_steps");
  if (factor == 1) return path;
  if (factor % 2 == 0) {
    // halve by adjacent pairs and recurse, so coarsening twice by 2 equals
    // coarsening once by 4 bit-exactly
    BrownianPath half;
    half.seed = path.seed;
    half.base_dt = path.base_dt * 2.0;
    half.dims = path.dims;
    const std::size_t n = path.n_steps() / 2;
    half.increments.resize(n * path.dims);
    for (std::size_t t = 0; t < n; ++t)
      for (std::uint32_t d = 0; d < path.dims; ++d)
        half.increments[t * path.dims + d] = path.increments[(2 * t) * path.dims + d] +
                                             path.increments[(2 * t + 1) * path.dims + d];
    return coarsen(half, factor / 2);
  }
  BrownianPath out;
  out.seed = path.seed;
  out.base_dt = path.base_dt * static_cast<double>(factor);
  out.dims = path.dims;
  const std::size_t n = path.n_steps() / factor;
  out.increments.assign(n * path.dims, 0.0);
  for (std::size_t s = 0; s < path.n_steps(); ++s) {
    const std::size_t t = s / factor;
    for (std::uint32_t d = 0; d < path.dims; ++d)
      out.increments[t * path.dims + d] += path.increments[s * path.dims + d];
  }
  return out;
}

void save_path(const BrownianPath& path, const std::string& filename) {
  std::ofstream f(filename, std::ios::binary);
  if (!f) throw std::runtime_error("save_path: cannot open " + filename);
  const std::uint64_t n = path.n_steps(), d = path.dims;
  f.write(reinterpret_cast<const char*>(&path.seed), 8);
  f.write(reinterpret_cast<const char*>(&path.base_dt), 8);
  f.write(reinterpret_cast<const char*>(&n), 8);
  f.write(reinterpret_cast<const char*>(&d), 8);
  f.write(reinterpret_cast<const char*>(path.increments.data()),
          static_cast<std::streamsize>(path.increments.size() * 8));
  if (!f) throw std::runtime_error("save_path: write failed for " + filename);
}

BrownianPath load_path(const std::string& filename) {
  std::ifstream f(filename, std::ios::binary);
  if (!f) throw std::runtime_error("load_path: cannot open " + filename);
  BrownianPath p;
  std::uint64_t n = 0, d = 0;
  f.read(reinterpret_cast<char*>(&p.seed), 8);
  f.read(reinterpret_cast<char*>(&p.base_dt), 8);
  f.read(reinterpret_cast<char*>(&n), 8);
  f.read(reinterpret_cast<char*>(&d), 8);
  if (!f || d == 0 || d > 16) throw std::runtime_error("load_path: bad header in " + filename);
  p.dims = static_cast<std::uint32_t>(d);
  p.increments.resize(n * d);
  f.read(reinterpret_cast<char*>(p.increments.data()),
         static_cast<std::streamsize>(p.increments.size() * 8));
  if (!f) throw std::runtime_error("load_path: truncated payload in " + filename);
  return p;
}

}  // namespace llgs
