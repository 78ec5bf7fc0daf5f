#include "llgs/kernels.hpp"

#include <stdexcept>

#include "llgs/dynamics.hpp"
#include "llgs/kernels_body.hpp"

namespace llgs::kernels {

namespace detail {

// Per-ISA entry points. The scalar set lives in this TU; the wider sets are
// compiled in TUs built with the matching target flags.
#define LLGS_KERNEL_SET(SUFFIX)                                                                  \
  void llgs_euler_maruyama_##SUFFIX(double*, double*, double*, const double*, const double*,    \
                                    const double*, std::size_t, const LlgsCoeffs&, double);     \
  void llgs_euler_heun_##SUFFIX(double*, double*, double*, const double*, const double*,        \
                                const double*, std::size_t, const LlgsCoeffs&, double);         \
  void llgs_heun_##SUFFIX(double*, double*, double*, const double*, const double*,              \
                          const double*, std::size_t, const LlgsCoeffs&, double);               \
  void llgs_rk4_heun_##SUFFIX(double*, double*, double*, const double*, const double*,          \
                              const double*, std::size_t, const LlgsCoeffs&, double, bool);     \
  void gsde_euler_heun_##SUFFIX(double*, const double*, std::size_t, double, double, double);   \
  void gsde_heun_##SUFFIX(double*, const double*, std::size_t, double, double, double);         \
  void gsde_midpoint_##SUFFIX(double*, const double*, std::size_t, double, double, double);     \
  void gsde_rk4_heun_##SUFFIX(double*, const double*, std::size_t, double, double, double,      \
                              bool);                                                            \
  void gsde_adams_##SUFFIX(double*, double*, const double*, std::size_t, double, double, double)

LLGS_KERNEL_SET(scalar);
#if defined(LLGS_HAVE_AVX2)
LLGS_KERNEL_SET(avx2);
#endif
#if defined(LLGS_HAVE_NEON)
LLGS_KERNEL_SET(neon);
#endif
#undef LLGS_KERNEL_SET

void llgs_euler_maruyama_scalar(double* mx, double* my, double* mz, const double* ex,
                                const double* ey, const double* ez, std::size_t n,
                                const LlgsCoeffs& c, double dt) {
  llgs_euler_maruyama_t<ScalarLane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_euler_heun_scalar(double* mx, double* my, double* mz, const double* ex, const double* ey,
                            const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  llgs_euler_heun_t<ScalarLane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_heun_scalar(double* mx, double* my, double* mz, const double* ex, const double* ey,
                      const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  llgs_heun_t<ScalarLane>(mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_rk4_heun_scalar(double* mx, double* my, double* mz, const double* ex, const double* ey,
                          const double* ez, std::size_t n, const LlgsCoeffs& c, double dt,
                          bool corrected) {
  llgs_rk4_heun_t<ScalarLane>(mx, my, mz, ex, ey, ez, n, c, dt, corrected);
}
void gsde_euler_heun_scalar(double* x, const double* eta, std::size_t n, double a, double b,
                            double dt) {
  gsde_euler_heun_t<ScalarLane>(x, eta, n, a, b, dt);
}
void gsde_heun_scalar(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  gsde_heun_t<ScalarLane>(x, eta, n, a, b, dt);
}
void gsde_midpoint_scalar(double* x, const double* eta, std::size_t n, double a, double b,
                          double dt) {
  gsde_midpoint_t<ScalarLane>(x, eta, n, a, b, dt);
}
void gsde_rk4_heun_scalar(double* x, const double* eta, std::size_t n, double a, double b,
                          double dt, bool corrected) {
  gsde_rk4_heun_t<ScalarLane>(x, eta, n, a, b, dt, corrected);
}
void gsde_adams_scalar(double* x, double* x_prev, const double* eta, std::size_t n, double a,
                       double b, double dt) {
  gsde_adams_t<ScalarLane>(x, x_prev, eta, n, a, b, dt);
}

}  // namespace detail

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

std::optional<Isa> isa_from_name(const std::string& name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  if (name == "auto") return std::nullopt;
  throw std::invalid_argument("unknown kernel isa '" + name + "'");
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(LLGS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::neon:
#if defined(LLGS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
#if defined(LLGS_HAVE_AVX2)
  if (isa_supported(Isa::avx2)) return Isa::avx2;
#endif
#if defined(LLGS_HAVE_NEON)
  return Isa::neon;
#endif
  return Isa::scalar;
}

namespace {
std::optional<Isa>& forced_isa() {
  static std::optional<Isa> v;
  return v;
}
}  // namespace

Isa active_isa() { return forced_isa().value_or(best_isa()); }

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_supported(*isa))
    throw std::invalid_argument(std::string("kernel isa '") + isa_name(*isa) +
                                "' not supported on this host");
  forced_isa() = isa;
}

LlgsCoeffs LlgsCoeffs::make(const MagnetParams& p, const DriveInput& drive) {
  LlgsCoeffs c;
  c.hk = p.hk_ratio();
  c.alpha = p.alpha;
  c.aprime = p.alpha_prime();
  c.neg_aprime_nu = -(p.alpha_prime() * thermal_nu(p));
  c.nx = p.easy_axis.x;
  c.ny = p.easy_axis.y;
  c.nz = p.easy_axis.z;
  c.Nx = p.demag.x;
  c.Ny = p.demag.y;
  c.Nz = p.demag.z;
  c.hax = drive.h_app.x;
  c.hay = drive.h_app.y;
  c.haz = drive.h_app.z;
  c.isx = drive.i_s.x;
  c.isy = drive.i_s.y;
  c.isz = drive.i_s.z;
  return c;
}

#if defined(LLGS_HAVE_AVX2)
#define LLGS_DISPATCH(NAME, ...)                                 \
  switch (active_isa()) {                                        \
    case Isa::avx2: detail::NAME##_avx2(__VA_ARGS__); return;    \
    default: detail::NAME##_scalar(__VA_ARGS__); return;         \
  }
#elif defined(LLGS_HAVE_NEON)
#define LLGS_DISPATCH(NAME, ...)                                 \
  switch (active_isa()) {                                        \
    case Isa::neon: detail::NAME##_neon(__VA_ARGS__); return;    \
    default: detail::NAME##_scalar(__VA_ARGS__); return;         \
  }
#else
#define LLGS_DISPATCH(NAME, ...) detail::NAME##_scalar(__VA_ARGS__)
#endif

void llgs_euler_maruyama(double* mx, double* my, double* mz, const double* ex, const double* ey,
                         const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  LLGS_DISPATCH(llgs_euler_maruyama, mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_euler_heun(double* mx, double* my, double* mz, const double* ex, const double* ey,
                     const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  LLGS_DISPATCH(llgs_euler_heun, mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_heun(double* mx, double* my, double* mz, const double* ex, const double* ey,
               const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  LLGS_DISPATCH(llgs_heun, mx, my, mz, ex, ey, ez, n, c, dt);
}
void llgs_rk4_heun(double* mx, double* my, double* mz, const double* ex, const double* ey,
                   const double* ez, std::size_t n, const LlgsCoeffs& c, double dt,
                   bool corrected) {
  LLGS_DISPATCH(llgs_rk4_heun, mx, my, mz, ex, ey, ez, n, c, dt, corrected);
}
void gsde_euler_heun(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  LLGS_DISPATCH(gsde_euler_heun, x, eta, n, a, b, dt);
}
void gsde_heun(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  LLGS_DISPATCH(gsde_heun, x, eta, n, a, b, dt);
}
void gsde_midpoint(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  LLGS_DISPATCH(gsde_midpoint, x, eta, n, a, b, dt);
}
void gsde_rk4_heun(double* x, const double* eta, std::size_t n, double a, double b, double dt,
                   bool corrected) {
  LLGS_DISPATCH(gsde_rk4_heun, x, eta, n, a, b, dt, corrected);
}
void gsde_adams(double* x, double* x_prev, const double* eta, std::size_t n, double a, double b,
                double dt) {
  LLGS_DISPATCH(gsde_adams, x, x_prev, eta, n, a, b, dt);
}

#undef LLGS_DISPATCH

}  // namespace llgs::kernels
