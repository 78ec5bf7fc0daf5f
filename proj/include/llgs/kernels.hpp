#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "llgs/magnet.hpp"

namespace llgs::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);
std::optional<Isa> isa_from_name(const std::string& name);

// Best instruction set the running CPU supports.
Isa best_isa();
// Active selection; force_isa(nullopt) returns to auto-detection.
Isa active_isa();
void force_isa(std::optional<Isa> isa);
bool isa_supported(Isa isa);

// Snapshot of magnet + drive coefficients for the batched LLGS steppers.
// Values are computed through the same expressions as the Vec3 path so the
// two stay bit-identical.
struct LlgsCoeffs {
  double hk = 0.0;
  double alpha = 0.0;
  double aprime = 1.0;
  double neg_aprime_nu = 0.0;  // -(alpha' * nu)
  double nx = 0.0, ny = 0.0, nz = 1.0;
  double Nx = 0.0, Ny = 0.0, Nz = 0.0;
  double hax = 0.0, hay = 0.0, haz = 0.0;
  double isx = 0.0, isy = 0.0, isz = 0.0;
  static LlgsCoeffs make(const MagnetParams& p, const DriveInput& drive);
};

// Batched cartesian s-LLGS steps over n independent paths in SoA layout.
// eta arrays hold the per-path Wiener increments for this step.
void llgs_euler_maruyama(double* mx, double* my, double* mz, const double* ex, const double* ey,
                         const double* ez, std::size_t n, const LlgsCoeffs& c, double dt);
void llgs_euler_heun(double* mx, double* my, double* mz, const double* ex, const double* ey,
                     const double* ez, std::size_t n, const LlgsCoeffs& c, double dt);
void llgs_heun(double* mx, double* my, double* mz, const double* ex, const double* ey,
               const double* ez, std::size_t n, const LlgsCoeffs& c, double dt);
void llgs_rk4_heun(double* mx, double* my, double* mz, const double* ex, const double* ey,
                   const double* ez, std::size_t n, const LlgsCoeffs& c, double dt, bool corrected);

// Batched steps for the scalar geometric SDE dX = a X dt + b X o dW.
void gsde_euler_heun(double* x, const double* eta, std::size_t n, double a, double b, double dt);
void gsde_heun(double* x, const double* eta, std::size_t n, double a, double b, double dt);
void gsde_midpoint(double* x, const double* eta, std::size_t n, double a, double b, double dt);
void gsde_rk4_heun(double* x, const double* eta, std::size_t n, double a, double b, double dt,
                   bool corrected);
void gsde_adams(double* x, double* x_prev, const double* eta, std::size_t n, double a, double b,
                double dt);

}  // namespace llgs::kernels
