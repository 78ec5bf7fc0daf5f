// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// check fails. Every tolerance is pinned here; nothing is deferred to later
// calibration. The master seed is fixed so reruns are byte-identical.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "llgs/dynamics.hpp"
#include "llgs/experiments.hpp"
#include "llgs/kernels.hpp"
#include "llgs/output.hpp"

using namespace llgs;

namespace {

constexpr std::uint64_t kSeed = 1905;

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MagnetParams fig7_magnet(double temperature) {
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

MagnetParams u10_magnet() {
  MagnetParams p;
  p.Ms = 1.11e6;
  p.Hk = 1.11e6;
  p.alpha = 0.01;
  p.temperature = 300.0;
  p.easy_axis = {0.0, 0.0, 1.0};
  p.demag = {0.0, 0.0, 0.0};
  const double ku = 0.5 * p.constants.mu0 * p.Ms * p.Hk;
  p.volume = 10.0 * p.constants.kB * p.temperature / ku;
  return p;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

const ErrorCurve& curve_of(const std::vector<ErrorCurve>& curves, Method m) {
  for (const auto& c : curves)
    if (c.method == m) return c;
  throw std::logic_error("missing curve");
}

// ---------------------------------------------------------------- criteria

void criterion_1_and_2() {
  // strong convergence on dX = aX dt + bX o dW, a = 1, 500 paths,
  // dt in {2^-4 .. 2^-10}
  const auto t0 = std::chrono::steady_clock::now();
  StrongStudyConfig cfg;
  cfg.a = 1.0;
  cfg.b = 0.1;
  cfg.level_min = 4;
  cfg.level_max = 10;
  cfg.n_paths = 500;
  cfg.methods = {Method::EulerHeun, Method::Heun, Method::ImplicitMidpoint, Method::Rk4Heun,
                 Method::Rk4HeunCorrected};
  cfg.seed = kSeed;
  const auto curves = strong_error_study(cfg);
  const double t_c1 = seconds_since(t0);

  const auto& eh = curve_of(curves, Method::EulerHeun);
  const auto& heun = curve_of(curves, Method::Heun);
  const auto& mid = curve_of(curves, Method::ImplicitMidpoint);
  const auto& rk4 = curve_of(curves, Method::Rk4Heun);
  const auto& rk4c = curve_of(curves, Method::Rk4HeunCorrected);

  report("criterion 1a (Euler-Heun fitted order 0.5 +/- 0.15)",
         eh.fitted_order >= 0.35 && eh.fitted_order <= 0.65,
         fmt("fitted order %.3f, bound [0.35, 0.65]; measured order ~1 is expected for "
             "commutative scalar noise",
             eh.fitted_order));

  const double eh_s0 = eh.local_slopes().front();
  const double heun_s0 = heun.local_slopes().front();
  const double mid_s0 = mid.local_slopes().front();
  report("criterion 1b (Heun and midpoint steeper than Euler-Heun at largest dt)",
         heun_s0 > eh_s0 && mid_s0 > eh_s0,
         fmt("local slopes at dt=2^-4: euler-heun %.2f, heun %.2f, midpoint %.2f", eh_s0, heun_s0,
             mid_s0));

  bool rk4_below = true, rk4c_below = true;
  for (std::size_t i = 0; i < heun.errors.size(); ++i) {
    rk4_below = rk4_below && rk4.errors[i] < heun.errors[i];
    rk4c_below = rk4c_below && rk4c.errors[i] < heun.errors[i];
  }
  report("criterion 1c (RK4-Heun error strictly below Heun at every dt)", rk4_below && rk4c_below,
         fmt("plain %s, corrected %s", rk4_below ? "below" : "NOT below",
             rk4c_below ? "below" : "NOT below"));
  report("criterion 1d (runtime < 60 s)", t_c1 < 60.0, fmt("%.1f s", t_c1));

  // criterion 2: small noise b = 0.01 pushes the steep regime to smaller dt.
  // Crossover level: first pair of adjacent dts whose local slope drops
  // below 1.7 (between the deterministic slope 2 and the stochastic 1).
  const auto t1 = std::chrono::steady_clock::now();
  cfg.b = 0.01;
  const auto small = strong_error_study(cfg);
  const double t_c2 = seconds_since(t1);
  auto crossover = [&](const ErrorCurve& c) {
    const auto slopes = c.local_slopes();
    for (std::size_t i = 0; i < slopes.size(); ++i)
      if (slopes[i] < 1.7) return static_cast<int>(i);
    return static_cast<int>(slopes.size());
  };
  const int xb1_heun = crossover(curve_of(curves, Method::Heun));
  const int xb2_heun = crossover(curve_of(small, Method::Heun));
  const int xb1_mid = crossover(curve_of(curves, Method::ImplicitMidpoint));
  const int xb2_mid = crossover(curve_of(small, Method::ImplicitMidpoint));
  report("criterion 2a (crossover dt decreases when b drops to 0.01)",
         xb2_heun > xb1_heun && xb2_mid > xb1_mid,
         fmt("crossover level index: heun %d -> %d, midpoint %d -> %d (larger = finer dt)",
             xb1_heun, xb2_heun, xb1_mid, xb2_mid));
  report("criterion 2b (runtime < 60 s)", t_c2 < 60.0, fmt("%.1f s", t_c2));
}

void criterion_3() {
  // implicit midpoint on the test SDE matches X (2+c)/(2-c) to 1e-14/step
  std::mt19937_64 eng(kSeed);
  std::uniform_real_distribution<double> ux(0.5, 2.0), udt(-4.0, -1.0);
  std::normal_distribution<double> xi(0.0, 1.0);
  const auto sys = geometric_test_sde(1.0, 0.1);
  NewtonOptions opt;
  opt.tol = 1e-15;
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = ux(eng);
    const double dt = std::pow(10.0, udt(eng));
    const double eta = std::sqrt(dt) * xi(eng);
    const double exact = geometric_midpoint_exact(x, 1.0, 0.1, dt, eta);
    const double solved = implicit_midpoint_step(sys, x, 0.0, dt, eta, opt);
    worst = std::max(worst, std::fabs(solved - exact) / std::max(1.0, std::fabs(exact)));
  }
  report("criterion 3 (analytic midpoint step, 1e5 random steps, 1e-14)", worst <= 1e-14,
         fmt("worst relative deviation %.2e", worst));
}

void criterion_4() {
  // 1 ns noisy run at 1 ps steps: midpoint keeps | |m|-1 | <= 1e-10 with
  // GN tol 1e-12; Heun deviates by >= 1e3 more on the same paths
  const MagnetParams p = fig7_magnet(300.0);
  NormStudyConfig cfg;
  cfg.p = p;
  cfg.methods = {Method::ImplicitMidpoint, Method::Heun};
  cfg.dts = {p.time_scale() * 1e-12};
  cfg.t_final = p.time_scale() * 1e-9;
  cfg.n_paths = 4;
  cfg.newton.tol = 1e-12;
  cfg.seed = kSeed;
  const auto res = norm_deviation_study(cfg);
  double dev_mid = -1.0, dev_heun = -1.0;
  for (const auto& e : res.deviations) {
    if (e.method == Method::ImplicitMidpoint) dev_mid = e.max_norm_deviation;
    if (e.method == Method::Heun) dev_heun = e.max_norm_deviation;
  }
  report("criterion 4 (norm preservation over 1 ns)",
         dev_mid <= 1e-10 && dev_heun >= 1e3 * dev_mid,
         fmt("midpoint %.2e, heun %.2e, ratio %.1e", dev_mid, dev_heun, dev_heun / dev_mid));
}

void criterion_5() {
  // noise-only 10 kBT run: Euler-Maruyama (Ito) norm grows beyond 1.001,
  // midpoint stays within 1e-10
  const MagnetParams p = u10_magnet();
  SimulateOptions opt;
  opt.solver.dt = 0.05;
  opt.t_final = 100.0;
  opt.m0 = p.easy_axis;
  opt.seed = kSeed;
  opt.solver.method = Method::EulerMaruyama;
  const Trajectory em = simulate(p, {{opt.t_final, DriveInput{}}}, opt);
  opt.solver.method = Method::ImplicitMidpoint;
  const Trajectory mid = simulate(p, {{opt.t_final, DriveInput{}}}, opt);
  report("criterion 5 (Ito reference grows the norm, Stratonovich midpoint does not)",
         em.max_norm() > 1.001 && mid.max_norm_deviation() <= 1e-10,
         fmt("EM max norm %.4f, midpoint max deviation %.2e", em.max_norm(),
             mid.max_norm_deviation()));
}

void criterion_6() {
  // Adams-extrapolated midpoint does not converge on dX = X dt + X o dW
  StrongStudyConfig cfg;
  cfg.a = 1.0;
  cfg.b = 1.0;
  cfg.level_min = 4;
  cfg.level_max = 10;
  cfg.n_paths = 500;
  cfg.methods = {Method::AdamsMidpoint, Method::EulerHeun};
  cfg.seed = kSeed;
  const auto curves = strong_error_study(cfg);
  const auto& adams = curve_of(curves, Method::AdamsMidpoint);
  const auto& eh = curve_of(curves, Method::EulerHeun);
  bool eh_decreasing = true;
  for (std::size_t i = 0; i + 1 < eh.errors.size(); ++i)
    eh_decreasing = eh_decreasing && eh.errors[i + 1] < eh.errors[i];
  bool adams_nonmonotone = false;
  for (std::size_t i = 0; i + 1 < adams.errors.size(); ++i)
    adams_nonmonotone = adams_nonmonotone || adams.errors[i + 1] >= adams.errors[i];
  report("criterion 6 (Adams extrapolation non-convergence)",
         adams.fitted_order < 0.2 && adams_nonmonotone && eh_decreasing,
         fmt("adams fitted order %.3f (non-monotone: %s), euler-heun order %.3f decreasing",
             adams.fitted_order, adams_nonmonotone ? "yes" : "no", eh.fitted_order));
}

void criterion_7() {
  // analytic Jacobian vs finite differences of the residual
  std::mt19937_64 eng(kSeed);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> udt(-4.0, -1.0);
  const MagnetParams p = fig7_magnet(300.0);
  auto rand_vec = [&](double s) { return Vec3{s * n01(eng), s * n01(eng), s * n01(eng)}; };
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 m0 = rand_vec(1.0);
    m0 = m0 / m0.norm();
    const Vec3 m = m0 + rand_vec(0.05);
    StepContext ctx;
    ctx.dt = std::pow(10.0, udt(eng));
    ctx.drive.h_app = rand_vec(0.3);
    ctx.drive.i_s = rand_vec(0.3);
    ctx.noise_increment = rand_vec(0.02 * std::sqrt(ctx.dt));
    const Mat3 J = implicit_jacobian(m, m0, ctx, p);
    const double eps = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Vec3 hi = m, lo = m;
      hi.at(j) += eps;
      lo.at(j) -= eps;
      const Vec3 col =
          (implicit_residual(hi, m0, ctx, p) - implicit_residual(lo, m0, ctx, p)) / (2 * eps);
      for (int i = 0; i < 3; ++i)
        worst = std::max(worst, std::fabs(col[i] - J(i, j)) / std::max(1.0, J.max_abs()));
    }
  }
  report("criterion 7 (Jacobian matches finite differences, rel err < 1e-6)", worst < 1e-6,
         fmt("worst relative deviation %.2e over 100 states", worst));
}

void criterion_8() {
  // deterministic reversal from -x under H_app = Ms x
  const MagnetParams p = fig7_magnet(0.0);
  DriveSchedule drive = {{1e9, [] {
                            DriveInput d;
                            d.h_app = {1.0, 0.0, 0.0};
                            return d;
                          }()}};
  const Vec3 m0 = normalized({-std::cos(0.01), std::sin(0.01), 0.0});

  auto run = [&](Method method, Representation rep, double dt, double t_final) {
    SimulateOptions opt;
    opt.solver.method = method;
    opt.solver.dt = dt;
    opt.t_final = t_final;
    opt.m0 = m0;
    opt.representation = rep;
    opt.seed = kSeed;
    return simulate(p, drive, opt);
  };

  // (a) dt = 0.01: cartesian and spherical agree pointwise and both reverse
  const Trajectory ca = run(Method::Rk4Heun, Representation::Cartesian, 0.01, 600.0);
  const Trajectory sa = run(Method::Rk4Heun, Representation::Spherical, 0.01, 600.0);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < ca.states.size(); ++i)
    max_diff = std::max(max_diff, (ca.states[i] - sa.states[i]).norm());
  const bool both_reverse = ca.states.back().x > 0.9 && sa.states.back().x > 0.9;
  report("criterion 8a (dt=0.01: forms agree within 1e-3 and reverse)",
         max_diff < 1e-3 && both_reverse,
         fmt("max pointwise difference %.2e, terminal m_x cart %.3f sph %.3f", max_diff,
             ca.states.back().x, sa.states.back().x));

  // (b) dt = 0.3: cartesian norm blows past 1.5, spherical stays on the
  // sphere but oscillates (m_x non-monotone after the nominal reversal).
  // The cartesian leg only needs the instability onset; it grows without
  // bound past that.
  const Trajectory cb = run(Method::Heun, Representation::Cartesian, 0.3, 60.0);
  const Trajectory sb = run(Method::Heun, Representation::Spherical, 0.3, 600.0);
  bool sph_norm_unit = sb.max_norm_deviation() <= 1e-12;
  std::size_t crossing = sb.states.size();
  for (std::size_t i = 0; i < sb.states.size(); ++i)
    if (sb.states[i].x > 0.0) {
      crossing = i;
      break;
    }
  bool oscillates = false;
  for (std::size_t i = crossing; i + 1 < sb.states.size(); ++i)
    if (sb.states[i + 1].x < sb.states[i].x - 1e-9) oscillates = true;
  report("criterion 8b (dt=0.3: cartesian unstable, spherical bounded oscillatory)",
         cb.max_norm() > 1.5 && sph_norm_unit && crossing < sb.states.size() && oscillates,
         fmt("cartesian max norm %.2f; spherical norm dev %.1e, m_x non-monotone after reversal: "
             "%s",
             cb.max_norm(), sb.max_norm_deviation(), oscillates ? "yes" : "no"));
}

void criterion_9() {
  MagnetParams p = fig7_magnet(0.0);  // nu = 0, Hk/Ms = 0.1
  DriveInput d;
  d.h_app = {1.0, 0.0, 0.0};
  const double v = critical_dt(p, d);
  report("criterion 9 (critical time step 0.1/2.1)",
         v == 0.1 / 2.1 && std::fabs(v - 0.047619) < 1e-6,
         fmt("dt_crit = %.6f (paper rounds to 0.045)", v));
}

double boltzmann_ks(const std::vector<double>& samples, double delta) {
  // quadrature CDF of p(theta) ~ sin(theta) exp(-delta sin^2 theta) on
  // [0, pi/2] (single well)
  const int n = 20000;
  std::vector<double> cdf(static_cast<std::size_t>(n) + 1, 0.0);
  const double h = (std::numbers::pi / 2) / n;
  auto pdf = [&](double th) { return std::sin(th) * std::exp(-delta * std::sin(th) * std::sin(th)); };
  for (int i = 1; i <= n; ++i) {
    const double a = h * (i - 1), bb = h * i;
    cdf[static_cast<std::size_t>(i)] =
        cdf[static_cast<std::size_t>(i) - 1] + 0.5 * (pdf(a) + pdf(bb)) * h;
  }
  for (auto& v : cdf) v /= cdf.back();
  std::vector<double> s = samples;
  std::sort(s.begin(), s.end());
  double ks = 0.0;
  const double N = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double th = std::clamp(s[i], 0.0, std::numbers::pi / 2);
    const double F = cdf[static_cast<std::size_t>(std::min<double>(n, th / h))];
    ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / N - F));
    ks = std::max(ks, std::fabs(static_cast<double>(i) / N - F));
  }
  return ks;
}

void criterion_10() {
  const auto t0 = std::chrono::steady_clock::now();
  const MagnetParams p = u10_magnet();
  AngleStudyConfig cfg;
  cfg.p = p;
  cfg.n_paths = 10000;
  cfg.equil_time = 500.0;
  cfg.solver.dt = 0.05;
  cfg.seed = kSeed;

  cfg.solver.method = Method::ImplicitMidpoint;
  const auto mid = initial_angle_distribution(cfg);
  cfg.solver.method = Method::BackwardEuler;
  const auto be = initial_angle_distribution(cfg);
  const double delta = p.barrier_over_kT();
  const double ks_mid = boltzmann_ks(mid.theta, delta);
  const double ks_be = boltzmann_ks(be.theta, delta);
  const double elapsed = seconds_since(t0);
  report("criterion 10a (midpoint equilibrium passes the Boltzmann KS test)", ks_mid < 0.05,
         fmt("KS statistic %.4f at 10^4 paths, barrier %.1f kBT", ks_mid, delta));
  report("criterion 10b (backward-Euler comparator fails it)", ks_be >= 2.0 * ks_mid,
         fmt("KS %.4f vs midpoint %.4f (ratio %.1f)", ks_be, ks_mid, ks_be / ks_mid));
  report("criterion 10c (runtime < 5 min)", elapsed < 300.0, fmt("%.0f s", elapsed));
}

void criterion_11() {
  const auto t0 = std::chrono::steady_clock::now();
  const MagnetParams p = fig7_magnet(300.0);
  SwitchMapConfig cfg;
  cfg.p = p;
  const double i0 = 0.16e-3 / p.current_scale();  // the 0.16 mA working point
  for (int i = 0; i < 8; ++i) cfg.amplitudes.push_back(i0 * 0.4 * std::pow(1.45, i));
  const double ns = p.time_scale() * 1e-9;
  for (int i = 0; i < 8; ++i) cfg.durations.push_back(ns * 0.25 * std::pow(1.62, i));
  cfg.paths_per_cell = 200;
  cfg.equil_time = ns;         // 1 ns thermalization
  cfg.relax_time = 2.0 * ns;   // post-pulse relaxation
  cfg.solver.method = Method::Heun;
  cfg.solver.dt = p.time_scale() * 1e-12;
  cfg.seed = kSeed;
  const SwitchingMap map = switching_map(cfg);
  const double elapsed = seconds_since(t0);

  const std::size_t A = map.amplitudes.size(), D = map.durations.size();
  const double n = cfg.paths_per_cell;
  auto sigma_pair = [&](double p1, double p2) {
    return std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / n) + 1e-12;
  };
  bool monotone = true;
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t d = 0; d + 1 < D; ++d)
      if (map.at(a, d + 1) < map.at(a, d) - 3.0 * sigma_pair(map.at(a, d), map.at(a, d + 1)))
        monotone = false;
  for (std::size_t d = 0; d < D; ++d)
    for (std::size_t a = 0; a + 1 < A; ++a)
      if (map.at(a + 1, d) < map.at(a, d) - 3.0 * sigma_pair(map.at(a, d), map.at(a + 1, d)))
        monotone = false;

  // the 50% boundary must sit inside the 90% one: along each amplitude row,
  // the first duration reaching 0.5 comes no later than the one reaching 0.9
  bool nested = true;
  bool saw_50 = false, saw_90 = false, saw_low = false;
  for (std::size_t a = 0; a < A; ++a) {
    std::size_t d50 = D, d90 = D;
    for (std::size_t d = 0; d < D; ++d) {
      if (map.at(a, d) >= 0.5 && d50 == D) d50 = d;
      if (map.at(a, d) >= 0.9 && d90 == D) d90 = d;
    }
    if (d50 != D) saw_50 = true;
    if (d90 != D) saw_90 = true;
    if (map.at(a, 0) < 0.5) saw_low = true;
    if (d50 != D && d90 != D && d50 > d90) nested = false;
  }
  report("criterion 11a (switching probability monotone within 3 sigma)", monotone,
         fmt("8x8 grid at %d paths/cell", cfg.paths_per_cell));
  report("criterion 11b (50% boundary inside the 90% boundary)",
         nested && saw_50 && saw_90 && saw_low,
         fmt("both boundaries present in grid: 50%% %s, 90%% %s", saw_50 ? "yes" : "no",
             saw_90 ? "yes" : "no"));
  report("criterion 11c (runtime < 10 min)", elapsed < 600.0, fmt("%.0f s", elapsed));
}

void criterion_12() {
  const auto t0 = std::chrono::steady_clock::now();
  const MagnetParams p = fig7_magnet(300.0);
  DelayConfig cfg;
  cfg.p = p;
  cfg.i_s = (0.16e-3 / p.current_scale()) * p.easy_axis;
  cfg.n_paths = 500;
  cfg.equil_time = p.time_scale() * 1e-9;   // 1 ns thermalization
  cfg.horizon = p.time_scale() * 20e-9;     // 20 ns
  cfg.solver.dt = p.time_scale() * 1e-12;   // 1 ps steps
  cfg.seed = kSeed;

  cfg.solver.method = Method::ImplicitMidpoint;
  const DelayResult mid = reversal_delay_pdf(cfg);
  cfg.solver.method = Method::Trapezoidal;
  const DelayResult trap = reversal_delay_pdf(cfg);
  const double elapsed = seconds_since(t0);

  const double to_ps = 1e12 / p.time_scale();
  const double gap = trap.mean_delay - mid.mean_delay;
  report("criterion 12a (trapezoidal mean delay exceeds midpoint's)", gap > 0.0,
         fmt("midpoint %.1f ps, trapezoidal %.1f ps, gap %+.2f ps (overflow %zu/%zu)",
             mid.mean_delay * to_ps, trap.mean_delay * to_ps, gap * to_ps, mid.n_overflow,
             trap.n_overflow));
  report("criterion 12b (runtime < 5 min at 500 paths)", elapsed < 300.0, fmt("%.0f s", elapsed));
}

void criterion_13() {
  // identical config + seed => byte-identical CSV, independent of threads
  // and of the kernel lane
  auto run_csv = [&](int threads, kernels::Isa isa) {
    kernels::force_isa(isa);
    StrongStudyConfig cfg;
    cfg.a = 1.0;
    cfg.b = 0.5;
    cfg.level_min = 4;
    cfg.level_max = 8;
    cfg.n_paths = 128;
    cfg.methods = {Method::Heun, Method::Rk4HeunCorrected};
    cfg.seed = kSeed;
    cfg.threads = threads;
    const auto curves = strong_error_study(cfg);
    CsvTable t({"method", "dt", "error"});
    for (const auto& c : curves)
      for (std::size_t i = 0; i < c.dts.size(); ++i)
        t.add_row({std::string(method_name(c.method)), c.dts[i], c.errors[i]});
    kernels::force_isa(std::nullopt);
    return t.to_string();
  };
  const std::string a = run_csv(1, kernels::Isa::scalar);
  const std::string b = run_csv(2, kernels::Isa::scalar);
  const std::string c = run_csv(4, kernels::best_isa());
  const bool threads_ok = a == b;
  const bool isa_ok = a == c;

  DelayConfig dc;
  dc.p = fig7_magnet(300.0);
  dc.i_s = 0.03 * dc.p.easy_axis;
  dc.n_paths = 32;
  dc.equil_time = 100.0;
  dc.horizon = 1500.0;
  dc.solver.method = Method::ImplicitMidpoint;
  dc.solver.dt = dc.p.time_scale() * 1e-12;
  dc.seed = kSeed;
  dc.threads = 1;
  const DelayResult d1 = reversal_delay_pdf(dc);
  dc.threads = 2;
  const DelayResult d2 = reversal_delay_pdf(dc);
  const bool delays_ok = d1.delays == d2.delays && d1.n_overflow == d2.n_overflow;

  report("criterion 13 (byte-identical reruns across thread counts and lanes)",
         threads_ok && isa_ok && delays_ok,
         fmt("threads %s, kernel lane %s, ensemble %s", threads_ok ? "ok" : "DIFFER",
             isa_ok ? "ok" : "DIFFER", delays_ok ? "ok" : "DIFFER"));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_13();
  std::printf("----\n%d check(s) failed, total runtime %.0f s\n", g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
