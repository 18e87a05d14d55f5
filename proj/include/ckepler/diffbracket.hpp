#pragma once

#include <Eigen/Dense>

#include "ckepler/observables.hpp"

namespace ckepler {

/// Exact phase-space gradient of an observable.
struct Gradient {
  Eigen::VectorXd dq;
  Eigen::VectorXd dp;

  Eigen::VectorXd stacked() const {
    Eigen::VectorXd z(dq.size() + dp.size());
    z << dq, dp;
    return z;
  }
};

struct BracketValue {
  double value = 0.0;
  double scale = 0.0;  // max magnitude of a gradient product entering the sum

  double residual() const { return std::abs(value) / std::max(scale, 1.0); }
};

namespace detail {

template <class S>
VecX<Dual<S>> lift(const VecX<S>& v) {
  VecX<Dual<S>> out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = Dual<S>(v[i]);
  return out;
}

}  // namespace detail

/// Scalar-generic gradient: one dual pass per coordinate (2N passes).
template <class S>
void gradient_vars(const ObservableId& id, const ModelParams& mp, Chart chart,
                   const VecX<S>& q, const VecX<S>& p, VecX<S>& dq, VecX<S>& dp) {
  const int n = static_cast<int>(q.size());
  dq.resize(n);
  dp.resize(n);
  VecX<Dual<S>> qd = detail::lift(q), pd = detail::lift(p);
  for (int k = 0; k < n; ++k) {
    qd[k].b = S(1.0);
    dq[k] = eval_observable_vars<Dual<S>>(id, mp, chart, qd, pd).b;
    qd[k].b = S(0.0);
  }
  for (int k = 0; k < n; ++k) {
    pd[k].b = S(1.0);
    dp[k] = eval_observable_vars<Dual<S>>(id, mp, chart, qd, pd).b;
    pd[k].b = S(0.0);
  }
}

inline Gradient gradient(const Observable& f, const PhasePoint& pt) {
  Gradient g;
  gradient_vars<double>(f.id, f.params, pt.chart, pt.q, pt.p, g.dq, g.dp);
  return g;
}

/// Canonical Poisson bracket {f,g} = sum_i df/dq_i dg/dp_i - df/dp_i dg/dq_i.
inline BracketValue bracket(const Observable& f, const Observable& g, const PhasePoint& pt) {
  const Gradient gf = gradient(f, pt);
  const Gradient gg = gradient(g, pt);
  BracketValue out;
  for (int i = 0; i < pt.dim(); ++i) {
    const double a = gf.dq[i] * gg.dp[i];
    const double b = gf.dp[i] * gg.dq[i];
    out.value += a - b;
    out.scale = std::max({out.scale, std::abs(a), std::abs(b)});
  }
  return out;
}

/// Independent central-finite-difference bracket, O(h^2) accurate. Kept free
/// of the dual-number path so it can cross-check it.
inline double bracket_fd_oracle(const Observable& f, const Observable& g, const PhasePoint& pt,
                                double h) {
  const int n = pt.dim();
  auto fd_grad = [&](const Observable& obs, Eigen::VectorXd& dq, Eigen::VectorXd& dp) {
    dq.resize(n);
    dp.resize(n);
    PhasePoint s = pt;
    for (int k = 0; k < n; ++k) {
      s.q[k] = pt.q[k] + h;
      const double up = obs(s);
      s.q[k] = pt.q[k] - h;
      const double dn = obs(s);
      s.q[k] = pt.q[k];
      dq[k] = (up - dn) / (2.0 * h);
    }
    for (int k = 0; k < n; ++k) {
      s.p[k] = pt.p[k] + h;
      const double up = obs(s);
      s.p[k] = pt.p[k] - h;
      const double dn = obs(s);
      s.p[k] = pt.p[k];
      dp[k] = (up - dn) / (2.0 * h);
    }
  };
  Eigen::VectorXd fq, fp, gq, gp;
  fd_grad(f, fq, fp);
  fd_grad(g, gq, gp);
  return fq.dot(gp) - fp.dot(gq);
}

/// Dense phase-space Hessian via nested duals; rows/cols ordered (q_1..q_N, p_1..p_N).
inline Eigen::MatrixXd hessian(const Observable& f, const PhasePoint& pt) {
  const int n = pt.dim();
  Eigen::MatrixXd H(2 * n, 2 * n);
  VecX<Dual1> q = detail::lift(pt.q), p = detail::lift(pt.p);
  VecX<Dual1> dq(n), dp(n);
  for (int k = 0; k < 2 * n; ++k) {
    Dual1& slot = k < n ? q[k] : p[k - n];
    slot.b = 1.0;
    gradient_vars<Dual1>(f.id, f.params, pt.chart, q, p, dq, dp);
    for (int r = 0; r < n; ++r) {
      H(r, k) = dq[r].b;
      H(n + r, k) = dp[r].b;
    }
    slot.b = 0.0;
  }
  return H;
}

}  // namespace ckepler
