// AVX2 instantiations of the batched kernels; this TU is compiled with
// -mavx2 and only reached through the runtime dispatch in kernels.cpp.

#include "llgs/kernels_body.hpp"

#if !defined(__AVX2__)
#error "kernels_avx2.cpp must be compiled with -mavx2"
#endif

namespace llgs::kernels::detail {

void llgs_euler_maruyama_avx2(double* mx, double* my, double* mz, const double* ex,
                              const double* ey, const double* ez, std::size_t n,
                              const LlgsCoeffs& c, double dt) {
  llgs_euler_maruyama_t<Avx2Lane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_euler_heun_avx2(double* mx, double* my, double* mz, const double* ex, const double* ey,
                          const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  llgs_euler_heun_t<Avx2Lane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_heun_avx2(double* mx, double* my, double* mz, const double* ex, const double* ey,
                    const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  llgs_heun_t<Avx2Lane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_rk4_heun_avx2(double* mx, double* my, double* mz, const double* ex, const double* ey,
                        const double* ez, std::size_t n, const LlgsCoeffs& c, double dt,
                        bool corrected) {
  llgs_rk4_heun_t<Avx2Lane>(mx, my, mz, ex, ey, ez, n, c, dt, corrected);
}
void gsde_euler_heun_avx2(double* x, const double* eta, std::size_t n, double a, double b,
                          double dt) {
  gsde_euler_heun_t<Avx2Lane>(x, eta, n, a, b, dt);
}
void gsde_heun_avx2(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  gsde_heun_t<Avx2Lane>(x, eta, n, a, b, dt);
}
void gsde_midpoint_avx2(double* x, const double* eta, std::size_t n, double a, double b,
                        double dt) {
  gsde_midpoint_t<Avx2Lane>(x, eta, n, a, b, dt);
}
void gsde_rk4_heun_avx2(double* x, const double* eta, std::size_t n, double a, double b, double dt,
                        bool corrected) {
  gsde_rk4_heun_t<Avx2Lane>(x, eta, n, a, b, dt, corrected);
}
void gsde_adams_avx2(double* x, double* x_prev, const double* eta, std::size_t n, double a,
                     double b, double dt) {
  gsde_adams_t<Avx2Lane>(x, x_prev, eta, n, a, b, dt);
}

}  // namespace llgs::kernels::detail
