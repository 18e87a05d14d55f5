#pragma once

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "ckepler/dual.hpp"
#include "ckepler/errors.hpp"

namespace ckepler {

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

enum class Chart { Poincare, Beltrami };

inline std::string chart_name(Chart c) { return c == Chart::Poincare ? "poincare" : "beltrami"; }

/// Canonical coordinates on one chart of the constant-curvature space.
struct PhasePoint {
  Chart chart = Chart::Poincare;
  Eigen::VectorXd q;
  Eigen::VectorXd p;

  int dim() const { return static_cast<int>(q.size()); }
};

/// Ambient (Weierstrass) coordinates on the constraint x0^2 + kappa*x^2 = 1.
struct AmbientPoint {
  double x0 = 1.0;
  Eigen::VectorXd x;
  double lambda_or_mu = 1.0;  // projection factor: lambda (Poincare) or mu (Beltrami)
};

inline bool validate_domain(const PhasePoint& pt, double kappa) {
  if (!pt.q.allFinite() || !pt.p.allFinite()) return false;
  return 1.0 + kappa * pt.q.squaredNorm() > 0.0;
}

inline void require_domain(const PhasePoint& pt, double kappa) {
  if (!validate_domain(pt, kappa))
    throw DomainError("point outside the chart domain 1 + kappa*q^2 > 0");
}

inline AmbientPoint to_ambient(const PhasePoint& pt, double kappa) {
  require_domain(pt, kappa);
  AmbientPoint a;
  const double q2 = pt.q.squaredNorm();
  if (pt.chart == Chart::Poincare) {
    const double lambda = 2.0 / (1.0 + kappa * q2);
    a.lambda_or_mu = lambda;
    a.x0 = lambda - 1.0;
    a.x = lambda * pt.q;
  } else {
    const double mu = 1.0 / std::sqrt(1.0 + kappa * q2);
    a.lambda_or_mu = mu;
    a.x0 = mu;
    a.x = mu * pt.q;
  }
  return a;
}

/// Scalar-generic chart maps; duals flow through for exact Jacobians.
template <class S>
struct ChartVars {
  VecX<S> q;
  VecX<S> p;
};

template <class S>
ChartVars<S> poincare_to_beltrami_vars(const VecX<S>& q, const VecX<S>& p, double kappa) {
  const S q2 = q.squaredNorm();
  const S den = 1.0 - kappa * q2;
  if (value_of(den) == 0.0)
    throw ChartSingularError("Beltrami chart singular at the equator 1 - kappa*q^2 = 0");
  const S qp = q.dot(p);
  const S one_plus = 1.0 + kappa * q2;
  ChartVars<S> out;
  out.q = (2.0 / den) * q;
  out.p = (den / (2.0 * one_plus)) * (one_plus * p - (2.0 * kappa * qp) * q);
  return out;
}

template <class S>
ChartVars<S> beltrami_to_poincare_vars(const VecX<S>& q, const VecX<S>& p, double kappa) {
  using std::sqrt;
  const S q2 = q.squaredNorm();
  if (value_of(q2) * kappa <= -1.0)
    throw DomainError("Beltrami point outside the chart domain");
  const S root = sqrt(S(1.0) + kappa * q2);
  const S qp = q.dot(p);
  ChartVars<S> out;
  out.q = q / (S(1.0) + root);
  out.p = (S(1.0) + root) * p + (kappa * qp) * q;
  return out;
}

inline PhasePoint poincare_to_beltrami(const PhasePoint& pt, double kappa) {
  if (pt.chart != Chart::Poincare) throw ChartSingularError("expected a Poincare-chart point");
  require_domain(pt, kappa);
  auto v = poincare_to_beltrami_vars<double>(pt.q, pt.p, kappa);
  return {Chart::Beltrami, std::move(v.q), std::move(v.p)};
}

inline PhasePoint beltrami_to_poincare(const PhasePoint& pt, double kappa) {
  if (pt.chart != Chart::Beltrami) throw ChartSingularError("expected a Beltrami-chart point");
  require_domain(pt, kappa);
  auto v = beltrami_to_poincare_vars<double>(pt.q, pt.p, kappa);
  return {Chart::Poincare, std::move(v.q), std::move(v.p)};
}

inline PhasePoint to_chart(const PhasePoint& pt, Chart target, double kappa) {
  if (pt.chart == target) return pt;
  return target == Chart::Beltrami ? poincare_to_beltrami(pt, kappa)
                                   : beltrami_to_poincare(pt, kappa);
}

/// Geodesic distance from the origin; principal branch r in (0, pi/(2 sqrt(kappa)))
/// for kappa > 0. Points beyond the Beltrami equator are rejected.
inline double geodesic_radius(const PhasePoint& pt, double kappa) {
  require_domain(pt, kappa);
  const double q2 = pt.q.squaredNorm();
  if (q2 == 0.0) throw OriginError("geodesic radius undefined at the origin");
  double bq2;  // Beltrami q^2
  if (pt.chart == Chart::Beltrami) {
    bq2 = q2;
  } else {
    const double den = 1.0 - kappa * q2;
    if (den <= 0.0)
      throw DomainError("Poincare point beyond the Beltrami equator; radius branch undefined");
    bq2 = 4.0 * q2 / (den * den);
  }
  const double bq = std::sqrt(bq2);
  if (kappa == 0.0) return bq;
  if (kappa > 0.0) {
    const double rk = std::sqrt(kappa);
    return std::atan(rk * bq) / rk;
  }
  const double rk = std::sqrt(-kappa);
  return std::atanh(rk * bq) / rk;
}

/// Draws domain-valid Poincare-chart points clear of the Beltrami equator and,
/// when centrifugal terms are active, clear of the coordinate hyperplanes.
struct PointSampler {
  int dim;
  double kappa;
  bool centrifugal_active = false;
  double coordinate_floor = 1e-3;

  PhasePoint operator()(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt) {
      PhasePoint pt;
      pt.chart = Chart::Poincare;
      pt.q.resize(dim);
      pt.p.resize(dim);
      if (kappa == 0.0) {
        for (int i = 0; i < dim; ++i) pt.q[i] = box(rng);
      } else {
        // uniform in the ball q^2 < 0.9/|kappa|
        const double rmax = std::sqrt(0.9 / std::abs(kappa));
        Eigen::VectorXd dir(dim);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < dim; ++i) dir[i] = gauss(rng);
        dir.normalize();
        pt.q = rmax * std::pow(unit(rng), 1.0 / dim) * dir;
      }
      for (int i = 0; i < dim; ++i) pt.p[i] = box(rng);
      if (centrifugal_active && (pt.q.cwiseAbs().minCoeff() < coordinate_floor)) continue;
      if (pt.q.squaredNorm() < coordinate_floor * coordinate_floor) continue;
      if (validate_domain(pt, kappa)) return pt;
    }
    throw SamplerError("could not draw a domain-valid phase point");
  }
};

}  // namespace ckepler
