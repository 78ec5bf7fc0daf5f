#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "llgs/brownian.hpp"
#include "llgs/integrators.hpp"
#include "llgs/magnet.hpp"

namespace llgs {

// ---------------------------------------------------------------- trajectories

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec3> states;   // cartesian samples (spherical runs are converted)
  std::vector<double> norms;  // |m| per sample
  Method method = Method::ImplicitMidpoint;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> gn_iterations;  // implicit methods: Newton iterations per step

  double max_norm_deviation() const;
  double max_norm() const;
};

struct DriveSegment {
  double t_end = 0.0;  // segment applies for t < t_end
  DriveInput drive;
};
using DriveSchedule = std::vector<DriveSegment>;

enum class Representation { Cartesian, Spherical };

struct SimulateOptions {
  SolverConfig solver;
  Representation representation = Representation::Cartesian;
  double t_final = 0.0;
  Vec3 m0{0.0, 0.0, 1.0};
  std::uint64_t seed = 0;
  std::size_t record_every = 1;
};

// Single trajectory under a piecewise-constant drive schedule. Rejects the
// Adams demonstrator. Implicit-solve failures carry the step index.
Trajectory simulate(const MagnetParams& p, const DriveSchedule& schedule,
                    const SimulateOptions& opt);

// ------------------------------------------------------------ test-SDE studies

struct ErrorCurve {
  Method method = Method::EulerHeun;
  std::vector<double> dts;     // descending by a constant factor
  std::vector<double> errors;  // mean |X~_1 - X_1|
  int n_paths = 0;
  double fitted_order = 0.0;  // least-squares slope of log2 error vs log2 dt

  std::vector<double> local_slopes() const;
};

struct StrongStudyConfig {
  double a = 1.0;
  double b = 0.1;
  int level_min = 4;    // coarsest dt = 2^-level_min
  int level_max = 10;   // base resolution dt = 2^-level_max
  int n_paths = 500;
  std::vector<Method> methods;
  std::uint64_t seed = 0;
  int threads = 0;
};

// Path-wise terminal error against X_1 = exp(a + b W_1), every method on the
// same coarsened realization of each path.
std::vector<ErrorCurve> strong_error_study(const StrongStudyConfig& cfg);

struct WeakCurve {
  Method method = Method::Heun;
  std::vector<double> dts;
  std::vector<double> err_mean;    // |mean X~_1 - E X_1|
  std::vector<double> err_second;  // |mean X~_1^2 - E X_1^2|
  int n_paths = 0;
  double fitted_order_mean = 0.0;
  double fitted_order_second = 0.0;
};

struct WeakStudyConfig {
  double a = 1.0;
  double b = 0.1;
  int level_min = 3;
  int level_max = 8;
  int n_paths = 10000;
  Method method = Method::Heun;
  std::uint64_t seed = 0;
  int threads = 0;
};

WeakCurve weak_error_study(const WeakStudyConfig& cfg);

// Stratonovich moments of the geometric SDE at t = 1.
double geometric_mean_oracle(double a, double b);        // exp(a + b^2/2)
double geometric_second_moment_oracle(double a, double b);  // exp(2a + 2b^2)

// --------------------------------------------------------- norm / path studies

struct NormStudyConfig {
  MagnetParams p;
  DriveInput drive;
  std::vector<Method> methods;
  std::vector<double> dts;
  double t_final = 0.0;
  int n_paths = 4;
  NewtonOptions newton;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct NormStudyEntry {
  Method method;
  double dt;
  double max_norm_deviation;
};

struct PathDifferenceEntry {
  Method a, b;
  double dt;
  double max_difference;  // max over time and paths of |m_a - m_b|
};

struct NormStudyResult {
  std::vector<NormStudyEntry> deviations;
  std::vector<PathDifferenceEntry> differences;
};

// Identical noise paths through every method; per-(method, dt) norm deviation
// and pairwise path differences.
NormStudyResult norm_deviation_study(const NormStudyConfig& cfg);

// ------------------------------------------------------------------ histograms

struct Histogram {
  std::vector<double> edges;        // size counts.size() + 1
  std::vector<std::size_t> counts;
  std::size_t overflow = 0;

  // Freedman-Diaconis width by default; pass `bins` to override.
  static Histogram build(std::span<const double> samples, std::optional<int> bins = std::nullopt);
};

// ------------------------------------------------------------- switching map

struct SwitchMapConfig {
  MagnetParams p;
  std::vector<double> amplitudes;  // normalized |i_s|, polarized along +easy_axis
  std::vector<double> durations;   // normalized pulse lengths
  int paths_per_cell = 200;
  double equil_time = 0.0;  // thermal-only window before the pulse
  double relax_time = 0.0;  // thermal-only window after the pulse
  SolverConfig solver;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct SwitchingMap {
  std::vector<double> amplitudes;
  std::vector<double> durations;
  std::vector<double> probability;  // [i_amp * durations.size() + i_dur]
  int paths_per_cell = 0;

  double at(std::size_t i_amp, std::size_t i_dur) const;
};

SwitchingMap switching_map(const SwitchMapConfig& cfg);

// ------------------------------------------------------------- reversal delay

struct DelayConfig {
  MagnetParams p;
  Vec3 i_s;  // pulse drive (normalized)
  int n_paths = 500;
  double equil_time = 0.0;
  double horizon = 0.0;  // measured from current switch-on
  SolverConfig solver;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct DelayResult {
  std::vector<double> delays;  // switched paths only
  std::size_t n_overflow = 0;  // never crossed within the horizon
  double mean_delay = 0.0;
  Histogram histogram;
};

DelayResult reversal_delay_pdf(const DelayConfig& cfg);

// First-passage time to m.n > 0 driving one prepared Brownian path (step size
// = path.base_dt); returns nullopt when the path never crosses. Used by the
// studies and by the step-halving self-convergence check.
std::optional<double> first_passage_delay(const MagnetParams& p, const DriveInput& drive,
                                          const Vec3& m0, const BrownianPath& path,
                                          const SolverConfig& solver);

// -------------------------------------------------------- initial angle study

struct AngleStudyConfig {
  MagnetParams p;
  int n_paths = 10000;
  double equil_time = 0.0;
  SolverConfig solver;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct AngleStudyResult {
  std::vector<double> theta;  // angle to the easy axis per path
  Histogram histogram;
};

// Thermal-noise-only equilibration from m = n; angle between m and n.
AngleStudyResult initial_angle_distribution(const AngleStudyConfig& cfg);

// Least-squares slope of log2(y) against log2(x).
double fitted_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace llgs
