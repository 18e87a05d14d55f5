#pragma once

#include <cmath>

#include "ckepler/geometry.hpp"

namespace ckepler {

enum class ModelClass { KC, QuasiGeneralized, Generalized };

/// Curvature, coupling and centrifugal strengths of the generalized
/// Kepler-Coulomb family. The model class is derived from the zero pattern of b.
struct ModelParams {
  double kappa = 0.0;
  double K = 1.0;
  Eigen::VectorXd b;  // length N
  int N = 2;

  static ModelParams kc(int n, double kappa, double K = 1.0) {
    ModelParams mp;
    mp.N = n;
    mp.kappa = kappa;
    mp.K = K;
    mp.b = Eigen::VectorXd::Zero(n);
    return mp;
  }

  ModelClass model_class() const {
    int zeros = 0;
    for (int i = 0; i < N; ++i)
      if (b[i] == 0.0) ++zeros;
    if (zeros == N) return ModelClass::KC;
    if (zeros >= 1) return ModelClass::QuasiGeneralized;
    return ModelClass::Generalized;
  }

  /// Index of the first vanishing centrifugal coefficient, -1 if none.
  int quasi_index() const {
    for (int i = 0; i < N; ++i)
      if (b[i] == 0.0) return i;
    return -1;
  }

  bool centrifugal_active() const { return b.size() > 0 && b.cwiseAbs().maxCoeff() > 0.0; }
};

/// sl(2,R) coalgebra generators evaluated in the point's own chart variables.
struct CoalgebraTriple {
  double j_minus;
  double j_three;
  double j_plus;

  double casimir() const { return j_minus * j_plus - j_three * j_three; }
};

namespace detail {

template <class S>
S centrifugal_sum(const VecX<S>& q, const Eigen::VectorXd& b) {
  S sum(0.0);
  for (int i = 0; i < q.size(); ++i) {
    if (b[i] == 0.0) continue;
    if (value_of(q[i]) == 0.0)
      throw CentrifugalSingularityError("q_i = 0 with b_i != 0");
    sum += b[i] / (q[i] * q[i]);
  }
  return sum;
}

}  // namespace detail

template <class S>
S eval_kinetic_vars(Chart chart, const VecX<S>& q, const VecX<S>& p, double kappa) {
  const S q2 = q.squaredNorm();
  if (chart == Chart::Poincare) {
    const S f = 1.0 + kappa * q2;
    return 0.125 * f * f * p.squaredNorm();
  }
  const S qp = q.dot(p);
  return 0.5 * (1.0 + kappa * q2) * (p.squaredNorm() + kappa * qp * qp);
}

template <class S>
S eval_H_kc_vars(Chart chart, const VecX<S>& q, const VecX<S>& p, double kappa, double K) {
  using std::sqrt;
  const S q2 = q.squaredNorm();
  if (value_of(q2) == 0.0) throw OriginError("Kepler-Coulomb potential undefined at the origin");
  const S T = eval_kinetic_vars(chart, q, p, kappa);
  if (chart == Chart::Poincare) return T - K * (1.0 - kappa * q2) / (2.0 * sqrt(q2));
  return T - K / sqrt(q2);
}

template <class S>
S eval_H_gen_vars(Chart chart, const VecX<S>& q, const VecX<S>& p, const ModelParams& mp) {
  const S q2 = q.squaredNorm();
  const S H = eval_H_kc_vars(chart, q, p, mp.kappa, mp.K);
  if (!mp.centrifugal_active()) return H;
  const S cs = detail::centrifugal_sum(q, mp.b);
  if (chart == Chart::Poincare) {
    const S f = 1.0 + mp.kappa * q2;
    return H + 0.125 * f * f * cs;
  }
  return H + 0.5 * (1.0 + mp.kappa * q2) * cs;
}

template <class S>
S eval_H_via_coalgebra_vars(Chart chart, const VecX<S>& q, const VecX<S>& p,
                            const ModelParams& mp) {
  using std::sqrt;
  const S jm = q.squaredNorm();
  if (value_of(jm) == 0.0) throw OriginError("coalgebra Hamiltonian undefined at the origin");
  const S j3 = q.dot(p);
  const S jp = p.squaredNorm() + detail::centrifugal_sum(q, mp.b);
  if (chart == Chart::Poincare) {
    const S f = 1.0 + mp.kappa * jm;
    return 0.125 * f * f * jp - mp.K * (1.0 - mp.kappa * jm) / (2.0 * sqrt(jm));
  }
  return 0.5 * (1.0 + mp.kappa * jm) * (jp + mp.kappa * j3 * j3) - mp.K / sqrt(jm);
}

inline double eval_kinetic(const PhasePoint& pt, double kappa) {
  require_domain(pt, kappa);
  return eval_kinetic_vars<double>(pt.chart, pt.q, pt.p, kappa);
}

inline double eval_H_kc(const PhasePoint& pt, const ModelParams& mp) {
  require_domain(pt, mp.kappa);
  return eval_H_kc_vars<double>(pt.chart, pt.q, pt.p, mp.kappa, mp.K);
}

inline double eval_H_gen(const PhasePoint& pt, const ModelParams& mp) {
  require_domain(pt, mp.kappa);
  return eval_H_gen_vars<double>(pt.chart, pt.q, pt.p, mp);
}

inline double eval_H_via_coalgebra(const PhasePoint& pt, const ModelParams& mp) {
  require_domain(pt, mp.kappa);
  return eval_H_via_coalgebra_vars<double>(pt.chart, pt.q, pt.p, mp);
}

inline CoalgebraTriple eval_coalgebra(const PhasePoint& pt, const ModelParams& mp) {
  CoalgebraTriple t;
  t.j_minus = pt.q.squaredNorm();
  t.j_three = pt.q.dot(pt.p);
  t.j_plus = pt.p.squaredNorm() + detail::centrifugal_sum<double>(pt.q, mp.b);
  return t;
}

}  // namespace ckepler
