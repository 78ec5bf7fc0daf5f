#include "llgs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "llgs/errors.hpp"
#include "llgs/kernels.hpp"
#include "llgs/parallel.hpp"

namespace llgs {

namespace {

DriveInput drive_at(const DriveSchedule& schedule, double t) {
  for (const auto& seg : schedule)
    if (t < seg.t_end) return seg.drive;
  return schedule.empty() ? DriveInput{} : schedule.back().drive;
}

Vec3 draw_eta(GaussianStream& g, double sqrt_dt) {
  const double x = g.next(), y = g.next(), z = g.next();
  return {sqrt_dt * x, sqrt_dt * y, sqrt_dt * z};
}

// Per-path cartesian stepper covering every production method.
class CartStepper {
 public:
  CartStepper(const MagnetParams& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {
    newton_.tol = cfg.gauss_newton_tol;
    newton_.max_iter = cfg.gauss_newton_max_iter;
  }

  void set_drive(const DriveInput& d) {
    drive_ = d;
    sys_ = llgs_system(p_, d);
  }

  Vec3 step(const Vec3& m, double t, const Vec3& eta, NewtonReport* rep = nullptr) {
    return step_dt(m, t, cfg_.dt, eta, rep);
  }

  Vec3 step_dt(const Vec3& m, double t, double dt, const Vec3& eta, NewtonReport* rep = nullptr) {
    Vec3 out;
    switch (cfg_.method) {
      case Method::EulerHeun: out = euler_heun_step(sys_, m, t, dt, eta); break;
      case Method::Heun: out = heun_step(sys_, m, t, dt, eta); break;
      case Method::EulerMaruyama: out = euler_maruyama_step(sys_, m, t, dt, eta); break;
      case Method::Rk4Heun: out = rk4_heun_step(sys_, m, t, dt, eta, cfg_.rk4_corrector); break;
      case Method::Rk4HeunCorrected: out = rk4_heun_step(sys_, m, t, dt, eta, true); break;
      case Method::ImplicitMidpoint: {
        const StepContext ctx{dt, drive_, eta};
        out = llgs_midpoint_step(m, p_, ctx, newton_, rep);
        break;
      }
      case Method::BackwardEuler: out = backward_euler_step(sys_, m, t, dt, eta, newton_, rep); break;
      case Method::Trapezoidal: out = trapezoidal_step(sys_, m, t, dt, eta, newton_, rep); break;
      case Method::AdamsMidpoint:
        throw ConfigError("adams-midpoint is a non-convergent demonstrator; "
                          "it is not selectable for simulations");
    }
    if (cfg_.renormalize && !method_is_implicit(cfg_.method)) out = normalized(out);
    return out;
  }

 private:
  MagnetParams p_;
  SolverConfig cfg_;
  DriveInput drive_;
  SdeSystem<Vec3> sys_;
  NewtonOptions newton_;
};

class SphStepper {
 public:
  SphStepper(const MagnetParams& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {
    newton_.tol = cfg.gauss_newton_tol;
    newton_.max_iter = cfg.gauss_newton_max_iter;
  }

  void set_drive(const DriveInput& d) { sys_ = spherical_llgs_system(p_, d, cfg_.theta_min); }

  SphState step(const SphState& s, double t, const Vec3& eta, NewtonReport* rep = nullptr) {
    return step_dt(s, t, cfg_.dt, eta, rep);
  }

  SphState step_dt(const SphState& s, double t, double dt, const Vec3& eta,
                   NewtonReport* rep = nullptr) {
    switch (cfg_.method) {
      case Method::EulerHeun: return euler_heun_step(sys_, s, t, dt, eta);
      case Method::Heun: return heun_step(sys_, s, t, dt, eta);
      case Method::EulerMaruyama: return euler_maruyama_step(sys_, s, t, dt, eta);
      case Method::Rk4Heun: return rk4_heun_step(sys_, s, t, dt, eta, cfg_.rk4_corrector);
      case Method::Rk4HeunCorrected: return rk4_heun_step(sys_, s, t, dt, eta, true);
      case Method::ImplicitMidpoint: return implicit_midpoint_step(sys_, s, t, dt, eta, newton_, rep);
      case Method::BackwardEuler: return backward_euler_step(sys_, s, t, dt, eta, newton_, rep);
      case Method::Trapezoidal: return trapezoidal_step(sys_, s, t, dt, eta, newton_, rep);
      case Method::AdamsMidpoint:
        throw ConfigError("adams-midpoint is a non-convergent demonstrator; "
                          "it is not selectable for simulations");
    }
    return s;
  }

 private:
  MagnetParams p_;
  SolverConfig cfg_;
  SdeSystem<SphState, Vec3> sys_;
  NewtonOptions newton_;
};

}  // namespace

double Trajectory::max_norm_deviation() const {
  double d = 0.0;
  for (double n : norms) d = std::max(d, std::fabs(n - 1.0));
  return d;
}

double Trajectory::max_norm() const {
  double d = 0.0;
  for (double n : norms) d = std::max(d, n);
  return d;
}

Trajectory simulate(const MagnetParams& p, const DriveSchedule& schedule,
                    const SimulateOptions& opt) {
  if (opt.solver.dt <= 0.0) throw ConfigError("simulate: dt must be > 0");
  if (opt.t_final <= 0.0) throw ConfigError("simulate: t_final must be > 0");
  if (method_is_demonstrator(opt.solver.method))
    throw ConfigError("adams-midpoint is a non-convergent demonstrator; "
                      "it is not selectable for simulations");
  const double dt = opt.solver.dt;
  const std::size_t n_steps = static_cast<std::size_t>(std::llround(opt.t_final / dt));
  const double sqrt_dt = std::sqrt(dt);
  GaussianStream rng(opt.seed);

  Trajectory traj;
  traj.method = opt.solver.method;
  traj.dt = dt;
  traj.seed = opt.seed;
  const bool implicit = method_is_implicit(opt.solver.method);

  const bool spherical = opt.representation == Representation::Spherical;
  CartStepper cart(p, opt.solver);
  SphStepper sph(p, opt.solver);

  Vec3 m = opt.m0;
  SphState s{};
  if (spherical) {
    const auto [th, ph] = to_spherical(opt.m0);
    s = {th, ph};
  }

  auto record = [&](double t) {
    traj.times.push_back(t);
    const Vec3 mm = spherical ? to_cartesian(s.theta, s.phi) : m;
    traj.states.push_back(mm);
    traj.norms.push_back(spherical ? 1.0 : m.norm());
  };
  record(0.0);

  DriveInput current = drive_at(schedule, 0.0);
  cart.set_drive(current);
  sph.set_drive(current);

  // Implicit-solve failures optionally halve the step and retry; the noise
  // increment is split with a Brownian-bridge draw so the underlying path is
  // refined, not redrawn.
  int step_iters = 0;
  std::function<Vec3(Vec3, double, double, Vec3, int)> cart_retry =
      [&](Vec3 x, double t, double h, Vec3 eta, int left) -> Vec3 {
    try {
      NewtonReport rep;
      const Vec3 out = cart.step_dt(x, t, h, eta, &rep);
      step_iters += rep.iterations;
      return out;
    } catch (SolverError&) {
      if (left <= 0) throw;
      const Vec3 xi{rng.next(), rng.next(), rng.next()};
      const Vec3 eta1 = eta * 0.5 + xi * (0.5 * std::sqrt(h));
      const Vec3 mid = cart_retry(x, t, 0.5 * h, eta1, left - 1);
      return cart_retry(mid, t + 0.5 * h, 0.5 * h, eta - eta1, left - 1);
    }
  };
  std::function<SphState(SphState, double, double, Vec3, int)> sph_retry =
      [&](SphState x, double t, double h, Vec3 eta, int left) -> SphState {
    try {
      NewtonReport rep;
      const SphState out = sph.step_dt(x, t, h, eta, &rep);
      step_iters += rep.iterations;
      return out;
    } catch (SolverError&) {
      if (left <= 0) throw;
      const Vec3 xi{rng.next(), rng.next(), rng.next()};
      const Vec3 eta1 = eta * 0.5 + xi * (0.5 * std::sqrt(h));
      const SphState mid = sph_retry(x, t, 0.5 * h, eta1, left - 1);
      return sph_retry(mid, t + 0.5 * h, 0.5 * h, eta - eta1, left - 1);
    }
  };

  for (std::size_t k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const DriveInput d = drive_at(schedule, t);
    if (std::memcmp(&d, &current, sizeof d) != 0) {
      current = d;
      cart.set_drive(current);
      sph.set_drive(current);
    }
    const Vec3 eta = draw_eta(rng, sqrt_dt);
    step_iters = 0;
    try {
      if (spherical)
        s = sph_retry(s, t, dt, eta, opt.solver.retry_halvings);
      else
        m = cart_retry(m, t, dt, eta, opt.solver.retry_halvings);
    } catch (SolverError& e) {
      e.step_index = k;
      throw;
    } catch (SingularityError& e) {
      e.step_index = k;
      throw;
    }
    if (implicit) traj.gn_iterations.push_back(step_iters);
    if ((k + 1) % opt.record_every == 0 || k + 1 == n_steps) record(static_cast<double>(k + 1) * dt);
  }
  return traj;
}

std::vector<double> ErrorCurve::local_slopes() const {
  std::vector<double> s;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i)
    s.push_back(std::log2(errors[i] / errors[i + 1]));
  return s;
}

double fitted_loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log2(x[i]), ly = std::log2(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double d = static_cast<double>(n) * sxx - sx * sx;
  return (static_cast<double>(n) * sxy - sx * sy) / d;
}

double geometric_mean_oracle(double a, double b) { return std::exp(a + 0.5 * b * b); }
double geometric_second_moment_oracle(double a, double b) { return std::exp(2.0 * a + 2.0 * b * b); }

namespace {

// Advances an SoA batch of geometric-SDE paths by one step.
void gsde_batch_step(Method method, std::vector<double>& x, std::vector<double>& x_prev,
                     const double* eta, std::size_t n, double a, double b, double dt) {
  switch (method) {
    case Method::EulerHeun: kernels::gsde_euler_heun(x.data(), eta, n, a, b, dt); break;
    case Method::Heun: kernels::gsde_heun(x.data(), eta, n, a, b, dt); break;
    case Method::ImplicitMidpoint: kernels::gsde_midpoint(x.data(), eta, n, a, b, dt); break;
    case Method::Trapezoidal: kernels::gsde_midpoint(x.data(), eta, n, a, b, dt); break;
    case Method::Rk4Heun: kernels::gsde_rk4_heun(x.data(), eta, n, a, b, dt, false); break;
    case Method::Rk4HeunCorrected: kernels::gsde_rk4_heun(x.data(), eta, n, a, b, dt, true); break;
    case Method::AdamsMidpoint:
      kernels::gsde_adams(x.data(), x_prev.data(), eta, n, a, b, dt);
      break;
    default:
      throw ConfigError(std::string("method '") + method_name(method) +
                        "' is not available for the scalar test SDE study");
  }
}

}  // namespace

std::vector<ErrorCurve> strong_error_study(const StrongStudyConfig& cfg) {
  if (cfg.level_min > cfg.level_max) throw ConfigError("strong_error_study: bad level range");
  const int n_levels = cfg.level_max - cfg.level_min + 1;
  const std::size_t n_paths = static_cast<std::size_t>(cfg.n_paths);
  const std::size_t n_base = std::size_t{1} << cfg.level_max;
  const double dt_base = 1.0 / static_cast<double>(n_base);

  // err[m][l][i]
  std::vector<std::vector<std::vector<double>>> err(
      cfg.methods.size(), std::vector<std::vector<double>>(n_levels, std::vector<double>(n_paths)));

  parallel_blocks(n_paths, cfg.threads, [&](std::size_t pb, std::size_t pe) {
    const std::size_t nc = pe - pb;
    // base increments for this chunk, path-major
    std::vector<std::vector<double>> base(nc);
    std::vector<double> exact(nc);
    for (std::size_t j = 0; j < nc; ++j) {
      const BrownianPath path = generate_path(split_seed(cfg.seed, pb + j), n_base, dt_base, 1);
      base[j] = path.increments;
      double wT = 0.0;
      for (double v : base[j]) wT += v;
      exact[j] = std::exp(cfg.a * 1.0 + cfg.b * wT);
    }
    std::vector<double> inc;  // step-major [step * nc + j]
    std::vector<double> x(nc), x_prev(nc);
    for (int l = 0; l < n_levels; ++l) {
      const int level = cfg.level_min + l;
      const std::size_t factor = std::size_t{1} << (cfg.level_max - level);
      const std::size_t n_steps = n_base / factor;
      const double dt = 1.0 / static_cast<double>(n_steps);
      inc.assign(n_steps * nc, 0.0);
      for (std::size_t j = 0; j < nc; ++j)
        for (std::size_t s = 0; s < n_base; ++s) inc[(s / factor) * nc + j] += base[j][s];
      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        std::fill(x.begin(), x.end(), 1.0);
        std::fill(x_prev.begin(), x_prev.end(), 1.0);
        for (std::size_t s = 0; s < n_steps; ++s)
          gsde_batch_step(cfg.methods[mi], x, x_prev, inc.data() + s * nc, nc, cfg.a, cfg.b, dt);
        for (std::size_t j = 0; j < nc; ++j) err[mi][l][pb + j] = std::fabs(x[j] - exact[j]);
      }
    }
  });

  std::vector<ErrorCurve> out;
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    ErrorCurve c;
    c.method = cfg.methods[mi];
    c.n_paths = cfg.n_paths;
    for (int l = 0; l < n_levels; ++l) {
      const double dt = std::pow(2.0, -(cfg.level_min + l));
      double sum = 0.0;
      for (std::size_t i = 0; i < n_paths; ++i) sum += err[mi][l][i];
      c.dts.push_back(dt);
      c.errors.push_back(sum / static_cast<double>(n_paths));
    }
    c.fitted_order = fitted_loglog_slope(c.dts, c.errors);
    out.push_back(std::move(c));
  }
  return out;
}

WeakCurve weak_error_study(const WeakStudyConfig& cfg) {
  if (cfg.level_min > cfg.level_max) throw ConfigError("weak_error_study: bad level range");
  const int n_levels = cfg.level_max - cfg.level_min + 1;
  const std::size_t n_paths = static_cast<std::size_t>(cfg.n_paths);
  const std::size_t n_base = std::size_t{1} << cfg.level_max;
  const double dt_base = 1.0 / static_cast<double>(n_base);

  // terminal[l][i]
  std::vector<std::vector<double>> terminal(n_levels, std::vector<double>(n_paths));

  parallel_blocks(n_paths, cfg.threads, [&](std::size_t pb, std::size_t pe) {
    const std::size_t nc = pe - pb;
    std::vector<std::vector<double>> base(nc);
    for (std::size_t j = 0; j < nc; ++j)
      base[j] = generate_path(split_seed(cfg.seed, pb + j), n_base, dt_base, 1).increments;
    std::vector<double> inc, x(nc), x_prev(nc);
    for (int l = 0; l < n_levels; ++l) {
      const int level = cfg.level_min + l;
      const std::size_t factor = std::size_t{1} << (cfg.level_max - level);
      const std::size_t n_steps = n_base / factor;
      const double dt = 1.0 / static_cast<double>(n_steps);
      inc.assign(n_steps * nc, 0.0);
      for (std::size_t j = 0; j < nc; ++j)
        for (std::size_t s = 0; s < n_base; ++s) inc[(s / factor) * nc + j] += base[j][s];
      std::fill(x.begin(), x.end(), 1.0);
      std::fill(x_prev.begin(), x_prev.end(), 1.0);
      for (std::size_t s = 0; s < n_steps; ++s)
        gsde_batch_step(cfg.method, x, x_prev, inc.data() + s * nc, nc, cfg.a, cfg.b, dt);
      for (std::size_t j = 0; j < nc; ++j) terminal[l][pb + j] = x[j];
    }
  });

  WeakCurve c;
  c.method = cfg.method;
  c.n_paths = cfg.n_paths;
  const double m1 = geometric_mean_oracle(cfg.a, cfg.b);
  const double m2 = geometric_second_moment_oracle(cfg.a, cfg.b);
  for (int l = 0; l < n_levels; ++l) {
    double s1 = 0.0, s2 = 0.0;
    for (double v : terminal[l]) {
      s1 += v;
      s2 += v * v;
    }
    const double n = static_cast<double>(n_paths);
    c.dts.push_back(std::pow(2.0, -(cfg.level_min + l)));
    c.err_mean.push_back(std::fabs(s1 / n - m1));
    c.err_second.push_back(std::fabs(s2 / n - m2));
  }
  c.fitted_order_mean = fitted_loglog_slope(c.dts, c.err_mean);
  c.fitted_order_second = fitted_loglog_slope(c.dts, c.err_second);
  return c;
}

NormStudyResult norm_deviation_study(const NormStudyConfig& cfg) {
  NormStudyResult res;
  const std::size_t nm = cfg.methods.size();
  const std::size_t n_paths = static_cast<std::size_t>(cfg.n_paths);
  // dev[dt][method], diff[dt][pair]
  std::vector<std::vector<double>> dev(cfg.dts.size(), std::vector<double>(nm, 0.0));
  std::vector<std::vector<double>> diff(cfg.dts.size(), std::vector<double>(nm * nm, 0.0));

  for (std::size_t di = 0; di < cfg.dts.size(); ++di) {
    const double dt = cfg.dts[di];
    const std::size_t n_steps = static_cast<std::size_t>(std::llround(cfg.t_final / dt));
    std::vector<std::vector<double>> dev_p(n_paths, std::vector<double>(nm, 0.0));
    std::vector<std::vector<double>> diff_p(n_paths, std::vector<double>(nm * nm, 0.0));
    parallel_blocks(n_paths, cfg.threads, [&](std::size_t pb, std::size_t pe) {
      for (std::size_t i = pb; i < pe; ++i) {
        const BrownianPath path = generate_path(split_seed(cfg.seed, i), n_steps, dt, 3);
        std::vector<CartStepper> steppers;
        std::vector<Vec3> m(nm, cfg.p.easy_axis);
        for (std::size_t k = 0; k < nm; ++k) {
          SolverConfig sc;
          sc.method = cfg.methods[k];
          sc.dt = dt;
          sc.gauss_newton_tol = cfg.newton.tol;
          sc.gauss_newton_max_iter = cfg.newton.max_iter;
          steppers.emplace_back(cfg.p, sc);
          steppers.back().set_drive(cfg.drive);
        }
        for (std::size_t s = 0; s < n_steps; ++s) {
          const Vec3 eta = path.vec3(s);
          const double t = static_cast<double>(s) * dt;
          for (std::size_t k = 0; k < nm; ++k) {
            m[k] = steppers[k].step(m[k], t, eta);
            dev_p[i][k] = std::max(dev_p[i][k], std::fabs(m[k].norm() - 1.0));
          }
          for (std::size_t ka = 0; ka < nm; ++ka)
            for (std::size_t kb = ka + 1; kb < nm; ++kb)
              diff_p[i][ka * nm + kb] =
                  std::max(diff_p[i][ka * nm + kb], (m[ka] - m[kb]).norm());
        }
      }
    });
    for (std::size_t i = 0; i < n_paths; ++i)
      for (std::size_t k = 0; k < nm; ++k) dev[di][k] = std::max(dev[di][k], dev_p[i][k]);
    for (std::size_t i = 0; i < n_paths; ++i)
      for (std::size_t k = 0; k < nm * nm; ++k) diff[di][k] = std::max(diff[di][k], diff_p[i][k]);
  }

  for (std::size_t di = 0; di < cfg.dts.size(); ++di) {
    for (std::size_t k = 0; k < nm; ++k)
      res.deviations.push_back({cfg.methods[k], cfg.dts[di], dev[di][k]});
    for (std::size_t ka = 0; ka < nm; ++ka)
      for (std::size_t kb = ka + 1; kb < nm; ++kb)
        res.differences.push_back(
            {cfg.methods[ka], cfg.methods[kb], cfg.dts[di], diff[di][ka * nm + kb]});
  }
  return res;
}

Histogram Histogram::build(std::span<const double> samples, std::optional<int> bins) {
  Histogram h;
  if (samples.empty()) {
    h.edges = {0.0, 1.0};
    h.counts = {0};
    return h;
  }
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double lo = s.front(), hi = s.back();
  int nb;
  if (bins) {
    nb = std::max(1, *bins);
  } else {
    const double q1 = s[s.size() / 4];
    const double q3 = s[(3 * s.size()) / 4];
    const double iqr = q3 - q1;
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(s.size()));
    nb = (width > 0.0 && hi > lo)
             ? std::clamp(static_cast<int>(std::ceil((hi - lo) / width)), 1, 512)
             : 1;
  }
  const double span = (hi > lo) ? (hi - lo) : 1.0;
  h.edges.resize(static_cast<std::size_t>(nb) + 1);
  for (int i = 0; i <= nb; ++i)
    h.edges[static_cast<std::size_t>(i)] = lo + span * static_cast<double>(i) / nb;
  h.counts.assign(static_cast<std::size_t>(nb), 0);
  for (double v : s) {
    int idx = static_cast<int>((v - lo) / span * nb);
    idx = std::clamp(idx, 0, nb - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

double SwitchingMap::at(std::size_t i_amp, std::size_t i_dur) const {
  return probability[i_amp * durations.size() + i_dur];
}

namespace {

// One thermal path through equilibration / pulse / relax phases; explicit
// methods run through the batch kernels, implicit ones per path.
struct PhasePlan {
  std::size_t n_equil = 0, n_pulse = 0, n_relax = 0;
  DriveInput pulse;
};

bool terminal_switched(const Vec3& m, const Vec3& n) { return dot(m, n) > 0.0; }

// Paths are seeded by their global index (cell * paths_per_cell + i), so
// every cell draws independent noise.
void run_cell_batch(const MagnetParams& p, const SolverConfig& solver, const PhasePlan& plan,
                    std::uint64_t master_seed, std::size_t path_index_offset, std::size_t n,
                    std::vector<Vec3>& terminal) {
  const double dt = solver.dt;
  const double sqrt_dt = std::sqrt(dt);
  const Vec3 m0 = -1.0 * p.easy_axis;
  const bool batchable = !method_is_implicit(solver.method);
  std::vector<GaussianStream> streams;
  streams.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    streams.emplace_back(split_seed(master_seed, path_index_offset + i));

  if (batchable) {
    std::vector<double> mx(n, m0.x), my(n, m0.y), mz(n, m0.z);
    std::vector<double> ex(n), ey(n), ez(n);
    const kernels::LlgsCoeffs quiet = kernels::LlgsCoeffs::make(p, DriveInput{});
    const kernels::LlgsCoeffs pulsed = kernels::LlgsCoeffs::make(p, plan.pulse);
    auto run_phase = [&](std::size_t n_steps, const kernels::LlgsCoeffs& c) {
      for (std::size_t s = 0; s < n_steps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          ex[i] = sqrt_dt * streams[i].next();
          ey[i] = sqrt_dt * streams[i].next();
          ez[i] = sqrt_dt * streams[i].next();
        }
        switch (solver.method) {
          case Method::EulerHeun:
            kernels::llgs_euler_heun(mx.data(), my.data(), mz.data(), ex.data(), ey.data(),
                                     ez.data(), n, c, dt);
            break;
          case Method::Heun:
            kernels::llgs_heun(mx.data(), my.data(), mz.data(), ex.data(), ey.data(), ez.data(), n,
                               c, dt);
            break;
          case Method::EulerMaruyama:
            kernels::llgs_euler_maruyama(mx.data(), my.data(), mz.data(), ex.data(), ey.data(),
                                         ez.data(), n, c, dt);
            break;
          case Method::Rk4Heun:
          case Method::Rk4HeunCorrected:
            kernels::llgs_rk4_heun(mx.data(), my.data(), mz.data(), ex.data(), ey.data(),
                                   ez.data(), n, c, dt,
                                   solver.method == Method::Rk4HeunCorrected || solver.rk4_corrector);
            break;
          default:
            throw ConfigError("switching map: unsupported explicit method");
        }
      }
    };
    run_phase(plan.n_equil, quiet);
    run_phase(plan.n_pulse, pulsed);
    run_phase(plan.n_relax, quiet);
    for (std::size_t i = 0; i < n; ++i) terminal[i] = Vec3{mx[i], my[i], mz[i]};
    return;
  }

  for (std::size_t i = 0; i < n; ++i) {
    CartStepper quiet(p, solver);
    quiet.set_drive(DriveInput{});
    CartStepper pulsed(p, solver);
    pulsed.set_drive(plan.pulse);
    Vec3 m = m0;
    double t = 0.0;
    for (std::size_t s = 0; s < plan.n_equil; ++s, t += dt)
      m = quiet.step(m, t, draw_eta(streams[i], sqrt_dt));
    for (std::size_t s = 0; s < plan.n_pulse; ++s, t += dt)
      m = pulsed.step(m, t, draw_eta(streams[i], sqrt_dt));
    for (std::size_t s = 0; s < plan.n_relax; ++s, t += dt)
      m = quiet.step(m, t, draw_eta(streams[i], sqrt_dt));
    terminal[i] = m;
  }
}

}  // namespace

SwitchingMap switching_map(const SwitchMapConfig& cfg) {
  if (cfg.solver.dt <= 0.0) throw ConfigError("switching_map: dt must be > 0");
  SwitchingMap map;
  map.amplitudes = cfg.amplitudes;
  map.durations = cfg.durations;
  map.paths_per_cell = cfg.paths_per_cell;
  const std::size_t n_cells = cfg.amplitudes.size() * cfg.durations.size();
  map.probability.assign(n_cells, 0.0);
  const std::size_t paths = static_cast<std::size_t>(cfg.paths_per_cell);

  parallel_blocks(n_cells, cfg.threads, [&](std::size_t cb, std::size_t ce) {
    std::vector<Vec3> terminal(paths);
    for (std::size_t cell = cb; cell < ce; ++cell) {
      const std::size_t ia = cell / cfg.durations.size();
      const std::size_t id = cell % cfg.durations.size();
      PhasePlan plan;
      plan.n_equil = static_cast<std::size_t>(std::llround(cfg.equil_time / cfg.solver.dt));
      plan.n_pulse = static_cast<std::size_t>(std::llround(cfg.durations[id] / cfg.solver.dt));
      plan.n_relax = static_cast<std::size_t>(std::llround(cfg.relax_time / cfg.solver.dt));
      plan.pulse.i_s = cfg.amplitudes[ia] * cfg.p.easy_axis;
      run_cell_batch(cfg.p, cfg.solver, plan, cfg.seed, cell * paths, paths, terminal);
      std::size_t hits = 0;
      for (std::size_t i = 0; i < paths; ++i)
        if (terminal_switched(terminal[i], cfg.p.easy_axis)) ++hits;
      map.probability[cell] = static_cast<double>(hits) / static_cast<double>(paths);
    }
  });
  return map;
}

std::optional<double> first_passage_delay(const MagnetParams& p, const DriveInput& drive,
                                          const Vec3& m0, const BrownianPath& path,
                                          const SolverConfig& solver) {
  CartStepper stepper(p, solver);
  stepper.set_drive(drive);
  Vec3 m = m0;
  const double dt = path.base_dt;
  for (std::size_t s = 0; s < path.n_steps(); ++s) {
    m = stepper.step(m, static_cast<double>(s) * dt, path.vec3(s));
    if (dot(m, p.easy_axis) > 0.0) return static_cast<double>(s + 1) * dt;
  }
  return std::nullopt;
}

DelayResult reversal_delay_pdf(const DelayConfig& cfg) {
  if (cfg.solver.dt <= 0.0) throw ConfigError("reversal_delay_pdf: dt must be > 0");
  const std::size_t n_paths = static_cast<std::size_t>(cfg.n_paths);
  const double dt = cfg.solver.dt;
  const double sqrt_dt = std::sqrt(dt);
  const std::size_t n_eq = static_cast<std::size_t>(std::llround(cfg.equil_time / dt));
  const std::size_t n_hz = static_cast<std::size_t>(std::llround(cfg.horizon / dt));
  std::vector<double> delay(n_paths, -1.0);

  parallel_blocks(n_paths, cfg.threads, [&](std::size_t pb, std::size_t pe) {
    for (std::size_t i = pb; i < pe; ++i) {
      GaussianStream rng(split_seed(cfg.seed, i));
      CartStepper quiet(cfg.p, cfg.solver);
      quiet.set_drive(DriveInput{});
      CartStepper pulsed(cfg.p, cfg.solver);
      DriveInput d;
      d.i_s = cfg.i_s;
      pulsed.set_drive(d);
      Vec3 m = -1.0 * cfg.p.easy_axis;
      double t = 0.0;
      for (std::size_t s = 0; s < n_eq; ++s, t += dt)
        m = quiet.step(m, t, draw_eta(rng, sqrt_dt));
      for (std::size_t s = 0; s < n_hz; ++s, t += dt) {
        m = pulsed.step(m, t, draw_eta(rng, sqrt_dt));
        if (dot(m, cfg.p.easy_axis) > 0.0) {
          delay[i] = static_cast<double>(s + 1) * dt;
          break;
        }
      }
    }
  });

  DelayResult res;
  for (double v : delay) {
    if (v < 0.0)
      ++res.n_overflow;
    else
      res.delays.push_back(v);
  }
  res.mean_delay = res.delays.empty()
                       ? 0.0
                       : std::accumulate(res.delays.begin(), res.delays.end(), 0.0) /
                             static_cast<double>(res.delays.size());
  res.histogram = Histogram::build(res.delays);
  res.histogram.overflow = res.n_overflow;
  return res;
}

AngleStudyResult initial_angle_distribution(const AngleStudyConfig& cfg) {
  if (cfg.solver.dt <= 0.0) throw ConfigError("initial_angle_distribution: dt must be > 0");
  const std::size_t n_paths = static_cast<std::size_t>(cfg.n_paths);
  const double dt = cfg.solver.dt;
  const double sqrt_dt = std::sqrt(dt);
  const std::size_t n_steps = static_cast<std::size_t>(std::llround(cfg.equil_time / dt));
  AngleStudyResult res;
  res.theta.assign(n_paths, 0.0);

  parallel_blocks(n_paths, cfg.threads, [&](std::size_t pb, std::size_t pe) {
    for (std::size_t i = pb; i < pe; ++i) {
      GaussianStream rng(split_seed(cfg.seed, i));
      CartStepper stepper(cfg.p, cfg.solver);
      stepper.set_drive(DriveInput{});
      Vec3 m = cfg.p.easy_axis;
      double t = 0.0;
      for (std::size_t s = 0; s < n_steps; ++s, t += dt)
        m = stepper.step(m, t, draw_eta(rng, sqrt_dt));
      const double c = dot(m, cfg.p.easy_axis) / m.norm();
      res.theta[i] = std::acos(std::clamp(c, -1.0, 1.0));
    }
  });
  res.histogram = Histogram::build(res.theta);
  return res;
}

}  // namespace llgs
