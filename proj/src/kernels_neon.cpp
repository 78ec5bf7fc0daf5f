// NEON instantiations for aarch64 hosts.

#include "llgs/kernels_body.hpp"

#if !defined(__aarch64__) || !defined(__ARM_NEON)
#error "kernels_neon.cpp must be compiled for aarch64 with NEON"
#endif

namespace llgs::kernels::detail {

void llgs_euler_maruyama_neon(double* mx, double* my, double* mz, const double* ex,
                              const double* ey, const double* ez, std::size_t n,
                              const LlgsCoeffs& c, double dt) {
  llgs_euler_maruyama_t<NeonLane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_euler_heun_neon(double* mx, double* my, double* mz, const double* ex, const double* ey,
                          const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  llgs_euler_heun_t<NeonLane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_heun_neon(double* mx, double* my, double* mz, const double* ex, const double* ey,
                    const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  llgs_heun_t<NeonLane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_rk4_heun_neon(double* mx, double* my, double* mz, const double* ex, const double* ey,
                        const double* ez, std::size_t n, const LlgsCoeffs& c, double dt,
                        bool corrected) {
  llgs_rk4_heun_t<NeonLane>(mx, my, mz, ex, ey, ez, n, c, dt, corrected);
}
void gsde_euler_heun_neon(double* x, const double* eta, std::size_t n, double a, double b,
                          double dt) {
  gsde_euler_heun_t<NeonLane>(x, eta, n, a, b, dt);
}
void gsde_heun_neon(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  gsde_heun_t<NeonLane>(x, eta, n, a, b, dt);
}
void gsde_midpoint_neon(double* x, const double* eta, std::size_t n, double a, double b,
                        double dt) {
  gsde_midpoint_t<NeonLane>(x, eta, n, a, b, dt);
}
void gsde_rk4_heun_neon(double* x, const double* eta, std::size_t n, double a, double b, double dt,
                        bool corrected) {
  gsde_rk4_heun_t<NeonLane>(x, eta, n, a, b, dt, corrected);
}
void gsde_adams_neon(double* x, double* x_prev, const double* eta, std::size_t n, double a,
                     double b, double dt) {
  gsde_adams_t<NeonLane>(x, x_prev, eta, n, a, b, dt);
}

}  // namespace llgs::kernels::detail
