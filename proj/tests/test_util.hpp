#pragma once

#include <random>

#include "llgs/magnet.hpp"

namespace llgs::test {

// In-plane 40x40x1 nm^3 magnet: Ms = 1.11e6 A/m, Hk = 1.11e5 A/m,
// alpha = 0.01, easy axis x, thin-film demag (0,0,1).
inline MagnetParams fig7_magnet(double temperature = 300.0) {
  MagnetParams p;
  p.Ms = 1.11e6;
  p.Hk = 1.11e5;
  p.alpha = 0.01;
  p.volume = 1.6e-24;
  p.temperature = temperature;
  p.easy_axis = {1.0, 0.0, 0.0};
  p.demag = {0.0, 0.0, 1.0};
  return p;
}

// Uniaxial-only magnet with a 10 kBT barrier at 300 K (volume solved from
// the barrier), easy axis z. Strong anisotropy keeps the thermal
// equilibration time short.
inline MagnetParams u10_magnet() {
  MagnetParams p;
  p.Ms = 1.11e6;
  p.Hk = 1.11e6;
  p.alpha = 0.01;
  p.temperature = 300.0;
  p.easy_axis = {0.0, 0.0, 1.0};
  p.demag = {0.0, 0.0, 0.0};
  p.volume = 1.0;  // placeholder, set below
  const double ku = 0.5 * p.constants.mu0 * p.Ms * p.Hk;
  p.volume = 10.0 * p.constants.kB * p.temperature / ku;
  return p;
}

inline Vec3 random_unit(std::mt19937_64& eng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(eng), n(eng), n(eng)};
  return v / v.norm();
}

inline Vec3 random_vec(std::mt19937_64& eng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(eng), n(eng), n(eng)};
}

}  // namespace llgs::test
