#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "llgs/dynamics.hpp"
#include "llgs/errors.hpp"
#include "llgs/magnet.hpp"
#include "llgs/vec3.hpp"

namespace llgs {

enum class Method {
  EulerHeun,
  Heun,
  ImplicitMidpoint,
  Rk4Heun,
  Rk4HeunCorrected,
  AdamsMidpoint,
  BackwardEuler,
  Trapezoidal,
  EulerMaruyama,
};

Method method_from_name(const std::string& name);
const char* method_name(Method m);
bool method_is_implicit(Method m);
// Adams extrapolation destroys the Markov property of the increments and
// does not converge; it stays available to the convergence studies only.
bool method_is_demonstrator(Method m);

struct SolverConfig {
  Method method = Method::ImplicitMidpoint;
  double dt = 0.0;
  double gauss_newton_tol = 1e-12;
  int gauss_newton_max_iter = 50;
  bool rk4_corrector = false;
  bool renormalize = false;  // opt-in; never applied by default
  double theta_min = 1e-8;
  // halve-and-retry policy for implicit-solve failures (0 = report failure)
  int retry_halvings = 0;
};

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
};

struct NewtonReport {
  int iterations = 0;
  double residual = 0.0;
};

// (theta, phi) state for the spherical form.
struct SphState {
  double theta = 0.0, phi = 0.0;
  SphState operator+(const SphState& o) const { return {theta + o.theta, phi + o.phi}; }
  SphState operator-(const SphState& o) const { return {theta - o.theta, phi - o.phi}; }
  SphState operator*(double s) const { return {theta * s, phi * s}; }
};

template <class S>
struct StateOps;

template <>
struct StateOps<double> {
  static constexpr int dim = 1;
  static double get(double x, int) { return x; }
  static void add(double& x, int, double d) { x += d; }
  static double norm(double x) { return std::fabs(x); }
};

template <>
struct StateOps<Vec3> {
  static constexpr int dim = 3;
  static double get(const Vec3& v, int i) { return v[i]; }
  static void add(Vec3& v, int i, double d) { v.at(i) += d; }
  static double norm(const Vec3& v) { return v.norm(); }
};

template <>
struct StateOps<SphState> {
  static constexpr int dim = 2;
  static double get(const SphState& s, int i) { return i == 0 ? s.theta : s.phi; }
  static void add(SphState& s, int i, double d) { (i == 0 ? s.theta : s.phi) += d; }
  static double norm(const SphState& s) { return std::hypot(s.theta, s.phi); }
};

// A Stratonovich SDE dX = f(X,t) dt + g(X,t) o dW presented through its drift
// and its diffusion applied to a concrete increment. The driving Wiener
// process may have a different dimension than the state (spherical form:
// 2-component state, 3-component noise).
template <class S, class N = S>
struct SdeSystem {
  std::function<S(const S&, double)> drift;
  std::function<S(const S&, double, const N&)> diffusion;  // returns g(X,t) * dW
};

// Dense solve for the tiny Newton systems (N = 1, 2, 3).
template <int N>
std::array<double, N> solve_dense(std::array<double, N * N> A, std::array<double, N> b) {
  for (int c = 0; c < N; ++c) {
    int p = c;
    for (int r = c + 1; r < N; ++r)
      if (std::fabs(A[r * N + c]) > std::fabs(A[p * N + c])) p = r;
    if (A[p * N + c] == 0.0) throw std::runtime_error("solve_dense: singular matrix");
    if (p != c) {
      for (int k = 0; k < N; ++k) std::swap(A[p * N + k], A[c * N + k]);
      std::swap(b[p], b[c]);
    }
    for (int r = c + 1; r < N; ++r) {
      const double f = A[r * N + c] / A[c * N + c];
      for (int k = c; k < N; ++k) A[r * N + k] -= f * A[c * N + k];
      b[r] -= f * b[c];
    }
  }
  std::array<double, N> x{};
  for (int r = N - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < N; ++k) s -= A[r * N + k] * x[k];
    x[r] = s / A[r * N + r];
  }
  return x;
}

// Newton iteration with a forward-difference Jacobian. Throws SolverError
// with the residual trace when max_iter is exhausted.
template <class S, class R>
S newton_solve(R&& residual, S x, const NewtonOptions& opt, NewtonReport* rep = nullptr) {
  constexpr int N = StateOps<S>::dim;
  std::vector<double> history;
  for (int it = 0;; ++it) {
    const S r = residual(x);
    const double rn = StateOps<S>::norm(r);
    history.push_back(rn);
    if (rn <= opt.tol) {
      if (rep) *rep = {it, rn};
      return x;
    }
    if (it >= opt.max_iter)
      throw SolverError("newton_solve: no convergence after " + std::to_string(it) + " iterations",
                        it, std::move(history));
    std::array<double, N * N> J{};
    std::array<double, N> b{};
    for (int j = 0; j < N; ++j) {
      const double xj = StateOps<S>::get(x, j);
      const double eps = 1e-8 * std::max(1.0, std::fabs(xj));
      S xp = x;
      StateOps<S>::add(xp, j, eps);
      const S rp = residual(xp);
      for (int i = 0; i < N; ++i)
        J[i * N + j] = (StateOps<S>::get(rp, i) - StateOps<S>::get(r, i)) / eps;
      b[j] = StateOps<S>::get(r, j);
    }
    const auto d = solve_dense<N>(J, b);
    for (int i = 0; i < N; ++i) StateOps<S>::add(x, i, -d[i]);
  }
}

// --- explicit one-step maps (canonical operation order; kernels mirror it) ---

template <class S, class N>
S euler_maruyama_step(const SdeSystem<S, N>& sys, const S& x, double t, double dt, const N& eta) {
  const S f0 = sys.drift(x, t);
  const S g0 = sys.diffusion(x, t, eta);
  return (x + f0 * dt) + g0;
}

template <class S, class N>
S euler_heun_step(const SdeSystem<S, N>& sys, const S& x, double t, double dt, const N& eta) {
  const S g0 = sys.diffusion(x, t, eta);
  const S pred = x + g0;
  const S f0 = sys.drift(x, t);
  const S g1 = sys.diffusion(pred, t + dt, eta);
  return (x + f0 * dt) + (g0 + g1) * 0.5;
}

template <class S, class N>
S heun_step(const SdeSystem<S, N>& sys, const S& x, double t, double dt, const N& eta) {
  const S f0 = sys.drift(x, t);
  const S g0 = sys.diffusion(x, t, eta);
  const S pred = (x + f0 * dt) + g0;
  const S f1 = sys.drift(pred, t + dt);
  const S g1 = sys.diffusion(pred, t + dt, eta);
  const double hdt = 0.5 * dt;
  return (x + (f0 + f1) * hdt) + (g0 + g1) * 0.5;
}

// RK4 stages for the drift only, Heun treatment of the noise. Stage inputs
// are d_i dt and s_1 eta (the paper leaves the dt/eta weighting implicit; we
// read the dimensionally consistent form).
template <class S, class N>
S rk4_heun_step(const SdeSystem<S, N>& sys, const S& x, double t, double dt, const N& eta,
                bool corrected) {
  const double th = t + 0.5 * dt;
  const S d1 = sys.drift(x, t);
  const S s1 = sys.diffusion(x, t, eta);
  const S s2 = sys.diffusion((x + d1 * dt) + s1, t + dt, eta);
  const S d2 = sys.drift(x + (d1 * dt + s1) * 0.5, th);
  const S d3 = sys.drift(x + (d2 * dt + s1) * 0.5, th);
  const S d4 = sys.drift((x + d3 * dt) + s1, t + dt);
  const S D = (d1 + d2 * 2.0 + d3 * 2.0 + d4) * (1.0 / 6.0);
  S out = (x + D * dt) + (s1 + s2) * 0.5;
  if (corrected) {
    const S s2c = sys.diffusion(out, t + dt, eta);
    out = (x + D * dt) + (s1 + s2c) * 0.5;
  }
  return out;
}

// Non-convergent demonstrator: midpoint formulas at the Adams extrapolation
// X_{n+1/2} = (3 X_n - X_{n-1}) / 2. First step bootstraps X_{-1} = X_0.
template <class S, class N>
S adams_midpoint_step(const SdeSystem<S, N>& sys, const S& x, const S& x_prev, double t, double dt,
                      const N& eta) {
  const S mid = x * 1.5 - x_prev * 0.5;
  const double th = t + 0.5 * dt;
  return (x + sys.drift(mid, th) * dt) + sys.diffusion(mid, th, eta);
}

// --- implicit one-step maps (Newton from the Euler predictor) ---

template <class S, class N>
S implicit_midpoint_step(const SdeSystem<S, N>& sys, const S& x, double t, double dt, const N& eta,
                         const NewtonOptions& opt = {}, NewtonReport* rep = nullptr) {
  const double th = t + 0.5 * dt;
  auto residual = [&](const S& xn) {
    const S mid = (x + xn) * 0.5;
    return xn - x - sys.drift(mid, th) * dt - sys.diffusion(mid, th, eta);
  };
  const S guess = (x + sys.drift(x, t) * dt) + sys.diffusion(x, t, eta);
  return newton_solve(residual, guess, opt, rep);
}

template <class S, class N>
S backward_euler_step(const SdeSystem<S, N>& sys, const S& x, double t, double dt, const N& eta,
                      const NewtonOptions& opt = {}, NewtonReport* rep = nullptr) {
  const double t1 = t + dt;
  auto residual = [&](const S& xn) {
    return xn - x - sys.drift(xn, t1) * dt - sys.diffusion(xn, t1, eta);
  };
  const S guess = (x + sys.drift(x, t) * dt) + sys.diffusion(x, t, eta);
  return newton_solve(residual, guess, opt, rep);
}

template <class S, class N>
S trapezoidal_step(const SdeSystem<S, N>& sys, const S& x, double t, double dt, const N& eta,
                   const NewtonOptions& opt = {}, NewtonReport* rep = nullptr) {
  const double t1 = t + dt;
  const S f0 = sys.drift(x, t);
  const S g0 = sys.diffusion(x, t, eta);
  const double hdt = 0.5 * dt;
  auto residual = [&](const S& xn) {
    return xn - x - (f0 + sys.drift(xn, t1)) * hdt - (g0 + sys.diffusion(xn, t1, eta)) * 0.5;
  };
  const S guess = (x + f0 * dt) + g0;
  return newton_solve(residual, guess, opt, rep);
}

// --- s-LLGS systems and the specialized midpoint solve ---

// Cartesian s-LLGS as a generic SDE system (unchecked evaluators; explicit
// methods legitimately wander off the unit sphere).
SdeSystem<Vec3> llgs_system(const MagnetParams& p, const DriveInput& drive);

// Diffusion of the spherical form applied to a 3-component increment.
SphState spherical_diffusion_apply(const SphState& s, const MagnetParams& p, const Vec3& eta,
                                   double theta_min = 1e-8);

// Spherical form; throws SingularityError inside the evaluators.
SdeSystem<SphState, Vec3> spherical_llgs_system(const MagnetParams& p, const DriveInput& drive,
                                                double theta_min = 1e-8);

// Gauss-Newton on the implicit-form residual with the analytic Jacobian;
// the frozen per-step thermal field is folded into the effective field.
Vec3 llgs_midpoint_step(const Vec3& m, const MagnetParams& p, const StepContext& ctx,
                        const NewtonOptions& opt = {}, NewtonReport* rep = nullptr);

// Scalar geometric test SDE dX = a X dt + b X o dW.
SdeSystem<double> geometric_test_sde(double a, double b);

// Closed-form midpoint update X (2 + c) / (2 - c), c = a dt + b eta.
double geometric_midpoint_exact(double x, double a, double b, double dt, double eta);

}  // namespace llgs
