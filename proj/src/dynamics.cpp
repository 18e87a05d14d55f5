#include "ckepler/dynamics.hpp"

#include <cmath>
#include <limits>

namespace ckepler {

std::pair<Eigen::VectorXd, Eigen::VectorXd> hamiltonian_vector_field(const Observable& H,
                                                                     const PhasePoint& pt) {
  const Gradient g = gradient(H, pt);
  return {g.dp, -g.dq};
}

namespace {

Eigen::VectorXd stack_state(const PhasePoint& pt) {
  Eigen::VectorXd z(2 * pt.dim());
  z << pt.q, pt.p;
  return z;
}

PhasePoint unstack_state(const Eigen::VectorXd& z, Chart chart) {
  const int n = static_cast<int>(z.size()) / 2;
  return {chart, z.head(n), z.tail(n)};
}

Eigen::VectorXd field_at(const Observable& H, const Eigen::VectorXd& z, Chart chart) {
  const auto [dq, dp] = hamiltonian_vector_field(H, unstack_state(z, chart));
  Eigen::VectorXd f(z.size());
  f << dq, dp;
  return f;
}

// Jacobian of the Hamiltonian vector field: J * Hess(H), exact via nested duals.
Eigen::MatrixXd field_jacobian(const Observable& H, const Eigen::VectorXd& z, Chart chart) {
  const int n = static_cast<int>(z.size()) / 2;
  const Eigen::MatrixXd hess = hessian(H, unstack_state(z, chart));
  Eigen::MatrixXd jac(2 * n, 2 * n);
  jac.topRows(n) = hess.bottomRows(n);
  jac.bottomRows(n) = -hess.topRows(n);
  return jac;
}

void check_state(const PhasePoint& pt, const ModelParams& mp, double wall_margin, long step) {
  if (!validate_domain(pt, mp.kappa))
    throw DomainExitError("state left the chart domain", step);
  for (int i = 0; i < mp.N; ++i)
    if (mp.b[i] != 0.0 && std::abs(pt.q[i]) < wall_margin)
      throw CentrifugalWallError("state approached a centrifugal wall", step);
}

Eigen::VectorXd implicit_midpoint_step(const Observable& H, const Eigen::VectorXd& z0,
                                       Chart chart, const IntegratorConfig& cfg, long step) {
  const double h = cfg.step;
  Eigen::VectorXd z1 = z0 + h * field_at(H, z0, chart);  // explicit Euler predictor
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(z0.size(), z0.size());
  for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
    const Eigen::VectorXd zm = 0.5 * (z0 + z1);
    const Eigen::VectorXd residual = z1 - z0 - h * field_at(H, zm, chart);
    if (residual.lpNorm<Eigen::Infinity>() <= cfg.newton_tol) return z1;
    const Eigen::MatrixXd jac = id - 0.5 * h * field_jacobian(H, zm, chart);
    z1 -= jac.partialPivLu().solve(residual);
  }
  const Eigen::VectorXd zm = 0.5 * (z0 + z1);
  if ((z1 - z0 - h * field_at(H, zm, chart)).lpNorm<Eigen::Infinity>() <= cfg.newton_tol)
    return z1;
  throw NewtonDivergenceError("Newton iteration did not converge", step);
}

Eigen::VectorXd rk4_step(const Observable& H, const Eigen::VectorXd& z0, Chart chart,
                         double h) {
  const Eigen::VectorXd k1 = field_at(H, z0, chart);
  const Eigen::VectorXd k2 = field_at(H, z0 + 0.5 * h * k1, chart);
  const Eigen::VectorXd k3 = field_at(H, z0 + 0.5 * h * k2, chart);
  const Eigen::VectorXd k4 = field_at(H, z0 + h * k3, chart);
  return z0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Trajectory integrate(const Observable& H, const PhasePoint& start, const IntegratorConfig& cfg,
                     const std::vector<Observable>& observables) {
  check_state(start, H.params, cfg.wall_margin, 0);
  Trajectory traj;
  traj.observable_names.reserve(observables.size());
  for (const auto& o : observables) traj.observable_names.push_back(o.name());

  auto log_state = [&](double t, const PhasePoint& pt) {
    traj.times.push_back(t);
    traj.states.push_back(pt);
    std::vector<double> row;
    row.reserve(observables.size());
    for (const auto& o : observables) row.push_back(o(pt));
    traj.logs.push_back(std::move(row));
  };

  log_state(0.0, start);
  Eigen::VectorXd z = stack_state(start);
  for (long k = 1; k <= cfg.steps; ++k) {
    z = cfg.method == IntegratorMethod::ImplicitMidpoint
            ? implicit_midpoint_step(H, z, start.chart, cfg, k)
            : rk4_step(H, z, start.chart, cfg.step);
    PhasePoint pt = unstack_state(z, start.chart);
    check_state(pt, H.params, cfg.wall_margin, k);
    log_state(k * cfg.step, pt);
  }
  return traj;
}

std::vector<DriftEntry> drift_report(const Trajectory& traj) {
  std::vector<DriftEntry> out;
  if (traj.logs.empty()) return out;
  for (std::size_t c = 0; c < traj.observable_names.size(); ++c) {
    DriftEntry e;
    e.observable = traj.observable_names[c];
    e.initial = traj.logs.front()[c];
    const double denom = std::max(1.0, std::abs(e.initial));
    for (const auto& row : traj.logs)
      e.max_drift = std::max(e.max_drift, std::abs(row[c] - e.initial) / denom);
    e.final_drift = std::abs(traj.logs.back()[c] - e.initial) / denom;
    out.push_back(std::move(e));
  }
  return out;
}

ClosureResult orbit_closure_check(const Trajectory& traj, double tol) {
  if (traj.states.size() < 3) throw NotBoundedError("trajectory too short for closure analysis");

  // Radial turning points: sign changes of q.p along the trajectory.
  std::vector<std::size_t> turns;
  double prev = traj.states.front().q.dot(traj.states.front().p);
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const double cur = traj.states[k].q.dot(traj.states[k].p);
    if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) turns.push_back(k);
    prev = cur;
  }
  if (turns.size() < 2)
    throw NotBoundedError("no full radial period observed; trajectory not bounded");

  const Eigen::VectorXd z0 = stack_state(traj.states.front());
  ClosureResult res;
  res.recurrence_distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = turns[1]; k < traj.states.size(); ++k)
    res.recurrence_distance =
        std::min(res.recurrence_distance, (stack_state(traj.states[k]) - z0).norm());
  res.closed = res.recurrence_distance <= tol;
  return res;
}

}  // namespace ckepler
