#pragma once

#include "llgs/magnet.hpp"
#include "llgs/vec3.hpp"

namespace llgs {

// Per-step integration context. The noise increment eta = sqrt(dt) xi is
// always pre-drawn by the Brownian machinery; dynamics never draws randomness.
struct StepContext {
  double dt = 0.0;
  DriveInput drive;
  Vec3 noise_increment{0.0, 0.0, 0.0};
};

// Explicit (decoupled) drift with a given effective field h:
//   -a' [ m x h + m x (m x i_s) + alpha ( m x (m x h) - m x i_s ) ].
// Canonical operation order; the batch kernels mirror it term for term.
inline Vec3 llgs_drift_core(const Vec3& m, const Vec3& h, const Vec3& i_s, double alpha,
                            double aprime) {
  const Vec3 t1 = cross(m, h);
  const Vec3 u = cross(m, i_s);
  const Vec3 t2 = cross(m, u);
  const Vec3 t3 = cross(m, t1);
  return (t1 + t2 + (t3 - u) * alpha) * (-aprime);
}

// Diffusion applied to a Wiener increment: g(m) eta for
//   g(m) = -(a' nu) m^x [I + alpha m^x].
inline Vec3 llgs_g_apply_core(const Vec3& m, const Vec3& eta, double alpha, double neg_aprime_nu) {
  const Vec3 w = cross(m, eta);
  const Vec3 v = cross(m, w);
  return (w + v * alpha) * neg_aprime_nu;
}

// Stratonovich drift evaluated with h = h_eff(m) + h_T. Requires |m| = 1 within 1e-6.
Vec3 drift(const Vec3& m, const MagnetParams& p, const DriveInput& drive, const Vec3& h_T);

// Unchecked variant used by the steppers (explicit methods legitimately
// evaluate at |m| != 1 when the norm drifts).
inline Vec3 drift_unchecked(const Vec3& m, const MagnetParams& p, const DriveInput& drive,
                            const Vec3& h_T) {
  const Vec3 hd = effective_field_det(m, p, drive);
  const Vec3 h{hd.x + h_T.x, hd.y + h_T.y, hd.z + h_T.z};
  return llgs_drift_core(m, h, drive.i_s, p.alpha, p.alpha_prime());
}

// The 3x3 diffusion matrix g(m); column j is the response to Wiener component j.
Mat3 diffusion(const Vec3& m, const MagnetParams& p);

inline Vec3 diffusion_apply(const Vec3& m, const MagnetParams& p, const Vec3& eta) {
  return llgs_g_apply_core(m, eta, p.alpha, -(p.alpha_prime() * thermal_nu(p)));
}

// Midpoint residual S_n(m) = m - m_n - dt f(t + dt/2, m_n, m) built from the
// implicit form of the equation: f uses the chord midpoint, the damping term
// alpha (m_mid x dm), and the per-step frozen thermal field
// h_T = nu eta / dt folded into the effective field.
Vec3 implicit_residual(const Vec3& m_next, const Vec3& m_n, const StepContext& ctx,
                       const MagnetParams& p);

// Analytic Jacobian of the residual with respect to m_next.
Mat3 implicit_jacobian(const Vec3& m_next, const Vec3& m_n, const StepContext& ctx,
                       const MagnetParams& p);

// Spherical right-hand side (theta from +z, phi from +x):
//   d theta / dt = a' ( h_phi + i_th + alpha h_th - alpha i_phi )
//   d phi   / dt = a' ( i_phi - h_th + alpha h_phi + alpha i_th ) / sin(theta)
// Throws SingularityError when |sin theta| <= theta_min.
struct SphericalRates {
  double dtheta = 0.0;
  double dphi = 0.0;
};
SphericalRates spherical_rhs(double theta, double phi, const MagnetParams& p,
                             const DriveInput& drive, const Vec3& h_T, double theta_min = 1e-8);

// dt_crit = 0.1 / max(|h_app| + eps, |i_s|), eps = Hk/Ms + 1 + nu.
double critical_dt(const MagnetParams& p, const DriveInput& drive);

}  // namespace llgs
