#include "llgs/integrators.hpp"

#include <stdexcept>

namespace llgs {

Method method_from_name(const std::string& name) {
  if (name == "euler-heun") return Method::EulerHeun;
  if (name == "heun") return Method::Heun;
  if (name == "implicit-midpoint") return Method::ImplicitMidpoint;
  if (name == "rk4-heun") return Method::Rk4Heun;
  if (name == "rk4-heun-corrected") return Method::Rk4HeunCorrected;
  if (name == "adams-midpoint") return Method::AdamsMidpoint;
  if (name == "backward-euler") return Method::BackwardEuler;
  if (name == "trapezoidal") return Method::Trapezoidal;
  if (name == "euler-maruyama") return Method::EulerMaruyama;
  throw ConfigError("unknown method '" + name + "'");
}

const char* method_name(Method m) {
  switch (m) {
    case Method::EulerHeun: return "euler-heun";
    case Method::Heun: return "heun";
    case Method::ImplicitMidpoint: return "implicit-midpoint";
    case Method::Rk4Heun: return "rk4-heun";
    case Method::Rk4HeunCorrected: return "rk4-heun-corrected";
    case Method::AdamsMidpoint: return "adams-midpoint";
    case Method::BackwardEuler: return "backward-euler";
    case Method::Trapezoidal: return "trapezoidal";
    case Method::EulerMaruyama: return "euler-maruyama";
  }
  return "?";
}

bool method_is_implicit(Method m) {
  return m == Method::ImplicitMidpoint || m == Method::BackwardEuler || m == Method::Trapezoidal;
}

bool method_is_demonstrator(Method m) { return m == Method::AdamsMidpoint; }

SdeSystem<Vec3> llgs_system(const MagnetParams& p, const DriveInput& drive) {
  SdeSystem<Vec3> sys;
  sys.drift = [p, drive](const Vec3& m, double) {
    return drift_unchecked(m, p, drive, Vec3{0.0, 0.0, 0.0});
  };
  sys.diffusion = [p](const Vec3& m, double, const Vec3& eta) {
    return diffusion_apply(m, p, eta);
  };
  return sys;
}

SphState spherical_diffusion_apply(const SphState& s, const MagnetParams& p, const Vec3& eta,
                                   double theta_min) {
  const double st = std::sin(s.theta);
  if (std::fabs(st) <= theta_min)
    throw SingularityError("spherical_diffusion_apply: sin(theta) below singularity guard",
                           s.theta);
  const auto [th_hat, ph_hat] = spherical_basis(s.theta, s.phi);
  const double e_th = dot(eta, th_hat), e_ph = dot(eta, ph_hat);
  const double anu = p.alpha_prime() * thermal_nu(p);
  return {anu * (e_ph + p.alpha * e_th), anu * (-e_th + p.alpha * e_ph) / st};
}

SdeSystem<SphState, Vec3> spherical_llgs_system(const MagnetParams& p, const DriveInput& drive,
                                                double theta_min) {
  SdeSystem<SphState, Vec3> sys;
  sys.drift = [p, drive, theta_min](const SphState& s, double) {
    const SphericalRates r = spherical_rhs(s.theta, s.phi, p, drive, Vec3{0, 0, 0}, theta_min);
    return SphState{r.dtheta, r.dphi};
  };
  sys.diffusion = [p, theta_min](const SphState& s, double, const Vec3& eta) {
    return spherical_diffusion_apply(s, p, eta, theta_min);
  };
  return sys;
}

Vec3 llgs_midpoint_step(const Vec3& m, const MagnetParams& p, const StepContext& ctx,
                        const NewtonOptions& opt, NewtonReport* rep) {
  // Euler predictor with the frozen thermal field folded into h.
  const Vec3 h_T = ctx.noise_increment * (thermal_nu(p) / ctx.dt);
  Vec3 x = m + drift_unchecked(m, p, ctx.drive, h_T) * ctx.dt;
  std::vector<double> history;
  for (int it = 0;; ++it) {
    const Vec3 S = implicit_residual(x, m, ctx, p);
    const double rn = S.norm();
    history.push_back(rn);
    if (rn <= opt.tol) {
      if (rep) *rep = {it, rn};
      return x;
    }
    if (it >= opt.max_iter)
      throw SolverError("llgs_midpoint_step: Gauss-Newton did not reach tolerance", it,
                        std::move(history));
    const Mat3 J = implicit_jacobian(x, m, ctx, p);
    x -= solve3(J, S);
  }
}

SdeSystem<double> geometric_test_sde(double a, double b) {
  SdeSystem<double> sys;
  sys.drift = [a](double x, double) { return a * x; };
  sys.diffusion = [b](double x, double, double eta) { return (b * x) * eta; };
  return sys;
}

double geometric_midpoint_exact(double x, double a, double b, double dt, double eta) {
  const double c = a * dt + b * eta;
  return x * ((2.0 + c) / (2.0 - c));
}

}  // namespace llgs
