#pragma once

#include <iosfwd>

#include "llgs/vec3.hpp"

#include <nlohmann/json_fwd.hpp>

namespace llgs {

// CODATA 2018 values; overridable through the JSON config.
struct PhysicalConstants {
  double gamma = 1.76085963023e11;  // gyromagnetic ratio of the electron, 1/(s T)
  double mu0 = 1.25663706212e-6;    // vacuum permeability, T m/A
  double kB = 1.380649e-23;         // Boltzmann constant, J/K
  double q = 1.602176634e-19;       // elementary charge, C
  double hbar = 1.054571817e-34;    // reduced Planck constant, J s
};

struct MagnetParams {
  double Ms = 0.0;           // saturation magnetization, A/m
  double Hk = 0.0;           // uniaxial anisotropy field, A/m
  double alpha = 0.0;        // Gilbert damping
  double volume = 0.0;       // m^3
  double temperature = 0.0;  // K
  Vec3 easy_axis{0.0, 0.0, 1.0};
  Vec3 demag{0.0, 0.0, 0.0};  // (Nx, Ny, Nz)
  PhysicalConstants constants;

  double hk_ratio() const { return Hk / Ms; }
  double alpha_prime() const { return 1.0 / (1.0 + alpha * alpha); }
  // uniaxial energy density K_u = mu0 Ms Hk / 2, J/m^3
  double uniaxial_density() const { return 0.5 * constants.mu0 * Ms * Hk; }
  // number of spins N_s = 2 Ms V / (gamma hbar)
  double spin_count() const { return 2.0 * Ms * volume / (constants.gamma * constants.hbar); }
  // spin-current scale I = q gamma mu0 Ms N_s, A
  double current_scale() const { return constants.q * constants.gamma * constants.mu0 * Ms * spin_count(); }
  // normalized time unit: t' = time_scale * t, 1/s
  double time_scale() const { return constants.gamma * constants.mu0 * Ms; }
  // energy barrier K_u V / kB T
  double barrier_over_kT() const { return uniaxial_density() * volume / (constants.kB * temperature); }

  // Throws ConfigError on invariant violations; demag-sum check only warns.
  void validate(std::ostream* warn = nullptr) const;

  static MagnetParams from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct DriveInput {
  Vec3 h_app{0.0, 0.0, 0.0};  // H_app / Ms
  Vec3 i_s{0.0, 0.0, 0.0};    // I_s / I

  static DriveInput from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Deterministic effective field, canonical operation order shared with the
// batch kernels (bitwise-equal results depend on it).
inline Vec3 effective_field_det(const Vec3& m, const MagnetParams& p, const DriveInput& d) {
  const double s = p.hk_ratio() * (p.easy_axis.x * m.x + p.easy_axis.y * m.y + p.easy_axis.z * m.z);
  return {(d.h_app.x + p.easy_axis.x * s) - p.demag.x * m.x,
          (d.h_app.y + p.easy_axis.y * s) - p.demag.y * m.y,
          (d.h_app.z + p.easy_axis.z * s) - p.demag.z * m.z};
}

// h_app + (Hk/Ms)(n.m)n - N*m + h_T. Requires |m| = 1 within 1e-6.
Vec3 effective_field(const Vec3& m, const MagnetParams& p, const DriveInput& d, const Vec3& h_T);

// d h_eff / d m = (Hk/Ms) n n^T - diag(N); constant in m.
Mat3 field_jacobian(const MagnetParams& p);

// Zeeman + uniaxial + shape energy, J. Requires |m| = 1 within 1e-6.
double total_energy(const Vec3& m, const MagnetParams& p, const DriveInput& d);

// nu = sqrt(2 alpha kB T / (mu0 Ms^2 V)); diffusion strength in normalized time.
double thermal_nu(const MagnetParams& p);

// sigma = nu sqrt(dt'), the per-step standard deviation of h_T dt'.
double thermal_sigma(const MagnetParams& p, double dt_norm);

}  // namespace llgs
