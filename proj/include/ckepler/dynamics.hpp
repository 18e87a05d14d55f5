#pragma once

#include <utility>
#include <vector>

#include "ckepler/diffbracket.hpp"

namespace ckepler {

enum class IntegratorMethod { ImplicitMidpoint, Rk4Reference };

struct IntegratorConfig {
  double step = 1e-3;
  long steps = 1000;
  IntegratorMethod method = IntegratorMethod::ImplicitMidpoint;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
  double wall_margin = 1e-4;  // abort when |q_i| with b_i != 0 falls below this
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<std::string> observable_names;
  std::vector<std::vector<double>> logs;  // logs[k] aligned with observable_names
};

struct DriftEntry {
  std::string observable;
  double initial = 0.0;
  double max_drift = 0.0;    // relative to max(1, |initial|)
  double final_drift = 0.0;
};

/// Canonical equations dq/dt = dH/dp, dp/dt = -dH/dq from the exact gradient.
std::pair<Eigen::VectorXd, Eigen::VectorXd> hamiltonian_vector_field(const Observable& H,
                                                                     const PhasePoint& pt);

Trajectory integrate(const Observable& H, const PhasePoint& start, const IntegratorConfig& cfg,
                     const std::vector<Observable>& observables);

std::vector<DriftEntry> drift_report(const Trajectory& traj);

struct ClosureResult {
  bool closed = false;
  double recurrence_distance = 0.0;
};

/// Minimal phase-space recurrence to the start state after at least one
/// radial period. Requires a bounded trajectory.
ClosureResult orbit_closure_check(const Trajectory& traj, double tol);

}  // namespace ckepler
