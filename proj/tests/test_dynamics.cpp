#include <doctest.h>

#include <random>

#include "ckepler/dynamics.hpp"
#include "ckepler/verify.hpp"

using namespace ckepler;

namespace {

PhasePoint make(Chart c, std::initializer_list<double> q, std::initializer_list<double> p) {
  PhasePoint pt;
  pt.chart = c;
  pt.q = Eigen::VectorXd::Map(q.begin(), static_cast<int>(q.size()));
  pt.p = Eigen::VectorXd::Map(p.begin(), static_cast<int>(p.size()));
  return pt;
}

ModelParams gen3(double kappa) {
  ModelParams mp = ModelParams::kc(3, kappa);
  mp.b = Eigen::Vector3d(0.3, 0.5, 0.7);
  return mp;
}

// descend to the effective-potential minimum so the orbit stays gentle;
// the O(h^2) midpoint error constant scales with the force derivatives
Eigen::VectorXd relax_q(const ModelParams& mp, Eigen::VectorXd q) {
  auto U = [&](const Eigen::VectorXd& qq) {
    PhasePoint pt;
    pt.chart = Chart::Poincare;
    pt.q = qq;
    pt.p = Eigen::VectorXd::Zero(qq.size());
    return eval_H_gen(pt, mp);
  };
  double step = 0.05;
  for (int it = 0; it < 2000 && step > 1e-12; ++it) {
    Eigen::VectorXd g(q.size());
    const double h = 1e-6;
    for (int i = 0; i < q.size(); ++i) {
      Eigen::VectorXd up = q, dn = q;
      up[i] += h;
      dn[i] -= h;
      g[i] = (U(up) - U(dn)) / (2 * h);
    }
    const Eigen::VectorXd cand = q - step * g;
    const bool ok = 1.0 + mp.kappa * cand.squaredNorm() > 0.2 &&
                    cand.cwiseAbs().minCoeff() > 0.05;
    if (ok && U(cand) < U(q)) {
      q = cand;
      step *= 1.2;
    } else {
      step *= 0.5;
    }
  }
  return q;
}

PhasePoint gentle_start(const ModelParams& mp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointSampler sampler{static_cast<int>(mp.N), mp.kappa, true, 0.3};
  PhasePoint start = sampler(rng);
  start.q = relax_q(mp, start.q);
  start.p *= 0.1;
  return start;
}

}  // namespace

TEST_CASE("vector field of free flat motion") {
  const ModelParams mp = ModelParams::kc(2, 0.0, 0.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  const auto pt = make(Chart::Beltrami, {0.5, 0.7}, {0.2, -0.4});
  const auto [dq, dp] = hamiltonian_vector_field(H, pt);
  CHECK((dq - pt.p).norm() <= 1e-14);
  CHECK(dp.norm() <= 1e-14);
}

TEST_CASE("circular flat KC orbit: radial velocity zero, radius held") {
  const ModelParams mp = ModelParams::kc(2, 0.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  const auto start = make(Chart::Beltrami, {1, 0}, {0, 1});
  const auto [dq, dp] = hamiltonian_vector_field(H, start);
  CHECK(std::abs(start.q.dot(dq)) <= 1e-14);

  IntegratorConfig cfg;
  cfg.step = 1e-5;
  cfg.steps = 10000;
  const auto traj = integrate(H, start, cfg, {H});
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, std::abs(s.q.norm() - 1.0));
  CHECK(worst <= 1e-9);
}

TEST_CASE("energy and integral drift, generalized curved model") {
  for (double kappa : {-1.0, 1.0}) {
    const ModelParams mp = gen3(kappa);
    const auto H = make_observable(Kind::Hamiltonian, mp);
    const PhasePoint start = gentle_start(mp, 97);
    IntegratorConfig cfg;
    cfg.step = 1e-3;
    cfg.steps = 2000;
    auto observables = independence_set(mp, 1);
    const auto traj = integrate(H, start, cfg, observables);
    for (const auto& e : drift_report(traj)) {
      INFO(e.observable);
      CHECK(e.max_drift <= 1e-7);
    }
  }
}

TEST_CASE("negative control: J_12 drifts under unequal centrifugal strengths") {
  const ModelParams mp = gen3(1.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  const PhasePoint start = sample_points(mp, 1, 97)[0];
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  cfg.steps = 2000;
  const auto traj =
      integrate(H, start, cfg, {make_observable(Kind::AngularMomentum, mp, 1, 2)});
  CHECK(drift_report(traj)[0].max_drift > 1e-3);
}

TEST_CASE("rk4 reference agrees with implicit midpoint") {
  const ModelParams mp = gen3(-1.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  const PhasePoint start = gentle_start(mp, 101);

  IntegratorConfig mid;
  mid.step = 1e-3;
  mid.steps = 1000;
  IntegratorConfig rk4;
  rk4.step = 1e-4;
  rk4.steps = 10000;
  rk4.method = IntegratorMethod::Rk4Reference;

  const auto a = integrate(H, start, mid, {});
  const auto b = integrate(H, start, rk4, {});
  CHECK((a.states.back().q - b.states.back().q).norm() <= 1e-6);
  CHECK((a.states.back().p - b.states.back().p).norm() <= 1e-6);
}

TEST_CASE("time reversal returns to the start") {
  const ModelParams mp = gen3(1.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  const PhasePoint start = sample_points(mp, 1, 103)[0];
  IntegratorConfig fwd;
  fwd.step = 1e-3;
  fwd.steps = 500;
  const auto out = integrate(H, start, fwd, {});
  IntegratorConfig bwd = fwd;
  bwd.step = -1e-3;
  const auto back = integrate(H, out.states.back(), bwd, {});
  CHECK((back.states.back().q - start.q).norm() <= 1e-8);
  CHECK((back.states.back().p - start.p).norm() <= 1e-8);
}

TEST_CASE("one-step map is symplectic") {
  const ModelParams mp = gen3(1.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  cfg.steps = 1;
  std::mt19937_64 rng(7);
  PointSampler sampler{3, 1.0, true};
  for (int trial = 0; trial < 5; ++trial) {
    const PhasePoint z0 = sampler(rng);
    const double h = 1e-6;
    Eigen::MatrixXd M(6, 6);
    for (int col = 0; col < 6; ++col) {
      PhasePoint up = z0, dn = z0;
      (col < 3 ? up.q[col] : up.p[col - 3]) += h;
      (col < 3 ? dn.q[col] : dn.p[col - 3]) -= h;
      const auto su = integrate(H, up, cfg, {}).states.back();
      const auto sd = integrate(H, dn, cfg, {}).states.back();
      for (int r = 0; r < 3; ++r) {
        M(r, col) = (su.q[r] - sd.q[r]) / (2.0 * h);
        M(3 + r, col) = (su.p[r] - sd.p[r]) / (2.0 * h);
      }
    }
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(6, 6);
    J.topRightCorner(3, 3).setIdentity();
    J.bottomLeftCorner(3, 3) = -Eigen::MatrixXd::Identity(3, 3);
    CHECK((M.transpose() * J * M - J).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("liouville: the field is divergence-free") {
  const ModelParams mp = gen3(-1.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  const PhasePoint pt = sample_points(mp, 1, 107)[0];
  const double h = 1e-6;
  double div = 0.0;
  for (int col = 0; col < 6; ++col) {
    PhasePoint up = pt, dn = pt;
    (col < 3 ? up.q[col] : up.p[col - 3]) += h;
    (col < 3 ? dn.q[col] : dn.p[col - 3]) -= h;
    const auto [uq, upp] = hamiltonian_vector_field(H, up);
    const auto [dq, dpp] = hamiltonian_vector_field(H, dn);
    div += col < 3 ? (uq[col] - dq[col]) / (2.0 * h) : (upp[col - 3] - dpp[col - 3]) / (2.0 * h);
  }
  CHECK(std::abs(div) <= 1e-6);
}

TEST_CASE("orbit closure") {
  const ModelParams mp = ModelParams::kc(2, 0.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  // flat Keplerian ellipse
  IntegratorConfig cfg;
  cfg.step = 1e-4;
  cfg.steps = 45000;
  const auto traj = integrate(H, make(Chart::Beltrami, {1, 0}, {0, 0.8}), cfg, {});
  const auto res = orbit_closure_check(traj, 1e-4);
  CHECK(res.closed);

  // free flat motion is not bounded
  const ModelParams free_mp = ModelParams::kc(2, 0.0, 0.0);
  const auto Hf = make_observable(Kind::Hamiltonian, free_mp);
  IntegratorConfig fcfg;
  fcfg.step = 1e-2;
  fcfg.steps = 500;
  const auto ftraj = integrate(Hf, make(Chart::Beltrami, {1, 0}, {0.5, 0.2}), fcfg, {});
  CHECK_THROWS_AS(orbit_closure_check(ftraj, 1e-4), NotBoundedError);
}

TEST_CASE("integration aborts at the centrifugal wall with the step index") {
  ModelParams mp = ModelParams::kc(2, 0.0);
  mp.b = Eigen::Vector2d(0.05, 0.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  // aimed straight at the q_1 = 0 wall; a wide margin guarantees a hit
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  cfg.steps = 1000;
  cfg.wall_margin = 0.2;
  try {
    integrate(H, make(Chart::Beltrami, {1.0, 1.0}, {-2.0, 0.0}), cfg, {});
    FAIL("expected a wall abort");
  } catch (const CentrifugalWallError& e) {
    CHECK(e.step_index > 0);
  }
}

TEST_CASE("constant observable has zero drift") {
  const ModelParams mp = ModelParams::kc(2, 1.0);
  const auto H = make_observable(Kind::Hamiltonian, mp);
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  cfg.steps = 200;
  // Higgs Casimir is identically K^2 along any flow
  const auto traj = integrate(H, sample_points(mp, 1, 109)[0], cfg,
                              {make_observable(Kind::HiggsCasimir, mp)});
  CHECK(drift_report(traj)[0].max_drift <= 1e-12);
}
