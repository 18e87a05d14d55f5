#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ckepler/models.hpp"

namespace ckepler {

/// Structured identifier of an evaluable phase-space function.
/// Indices are 1-based, matching the usual component notation.
enum class Kind {
  Hamiltonian,      // H^g of the params (reduces to KC when b = 0)
  AngularMomentum,  // J_ij, i < j
  Translation,      // P_i, curved translation generator
  CasimirLeft,      // C^(m), leading rotation-Casimir chain
  CasimirRight,     // C_(m), trailing rotation-Casimir chain
  Lrl,              // L_i, Laplace-Runge-Lenz component (KC)
  GenCasimirLeft,   // C^(m)_g, coalgebra left-chain Casimir
  GenCasimirRight,  // C_(m)^g, coalgebra right-chain Casimir
  QuarticLrl,       // L^g_i, quartic hidden integral
  QuasiLrl,         // L^qg_i, quadratic integral of the quasi-generalized model
  HiggsNumber,      // J_12 carrier of the number generator (N = 2)
  HiggsCasimir,     // real quartic Casimir L1^2 + L2^2 + kappa J^4 - 2 H J^2
  Lambda,           // 2 (kappa |J|^2 - H), the cubic-algebra structure function
  CoalgebraJMinus,
  CoalgebraJThree,
  CoalgebraJPlus,
  CoalgebraCasimir,
  CoordQ,  // coordinate functions, canonical-bracket probes
  CoordP,
};

struct ObservableId {
  Kind kind;
  int i = 0;
  int j = 0;
};

std::string observable_name(const ObservableId& id);

namespace detail {

template <class S>
S eval_J(int i, int j, const VecX<S>& q, const VecX<S>& p) {
  return q[i - 1] * p[j - 1] - q[j - 1] * p[i - 1];
}

template <class S>
VecX<S> translation_vector(Chart chart, const VecX<S>& q, const VecX<S>& p, double kappa) {
  const S q2 = q.squaredNorm();
  const S qp = q.dot(p);
  if (chart == Chart::Poincare)
    return (0.5 * (1.0 - kappa * q2)) * p + (kappa * qp) * q;
  return p + (kappa * qp) * q;
}

template <class S>
S eval_lrl_component(int i, Chart chart, const VecX<S>& q, const VecX<S>& p, double kappa,
                     double K) {
  using std::sqrt;
  const S q2 = q.squaredNorm();
  if (value_of(q2) == 0.0) throw OriginError("LRL component undefined at the origin");
  const VecX<S> P = translation_vector(chart, q, p, kappa);
  S acc(0.0);
  for (int l = 0; l < q.size(); ++l)
    acc += P[l] * (q[l] * p[i - 1] - q[i - 1] * p[l]);
  return acc + K * q[i - 1] / sqrt(q2);
}

/// Centrifugal dressing of the LRL component: (1-kappa q^2) sum b_l q_i/(2 q_l^2)
/// in Poincare variables, sum b_l q_i/q_l^2 in Beltrami ones. `skip` excludes
/// one index (quasi-generalized case); pass 0 to keep all terms.
template <class S>
S lrl_centrifugal_shift(int i, int skip, Chart chart, const VecX<S>& q,
                        const Eigen::VectorXd& b, double kappa) {
  S sum(0.0);
  for (int l = 0; l < q.size(); ++l) {
    if (b[l] == 0.0 || l + 1 == skip) continue;
    if (value_of(q[l]) == 0.0) throw CentrifugalSingularityError("q_l = 0 with b_l != 0");
    sum += b[l] / (q[l] * q[l]);
  }
  if (chart == Chart::Poincare)
    return 0.5 * (1.0 - kappa * q.squaredNorm()) * q[i - 1] * sum;
  return q[i - 1] * sum;
}

template <class S>
S eval_casimir_window(int lo, int hi, const VecX<S>& q, const VecX<S>& p) {
  S acc(0.0);
  for (int i = lo; i < hi; ++i)
    for (int j = i + 1; j <= hi; ++j) {
      const S J = eval_J(i, j, q, p);
      acc += J * J;
    }
  return acc;
}

template <class S>
S eval_gen_casimir_window(int lo, int hi, const VecX<S>& q, const VecX<S>& p,
                          const Eigen::VectorXd& b) {
  S acc(0.0);
  for (int i = lo; i < hi; ++i)
    for (int j = i + 1; j <= hi; ++j) {
      const S J = eval_J(i, j, q, p);
      acc += J * J;
      if (b[i - 1] != 0.0 || b[j - 1] != 0.0) {
        if (value_of(q[i - 1]) == 0.0 || value_of(q[j - 1]) == 0.0)
          throw CentrifugalSingularityError("q_i = 0 inside a generalized Casimir window");
        const S qi2 = q[i - 1] * q[i - 1];
        const S qj2 = q[j - 1] * q[j - 1];
        acc += b[i - 1] * qj2 / qi2 + b[j - 1] * qi2 / qj2;
      }
    }
  for (int i = lo; i <= hi; ++i) acc += b[i - 1];
  return acc;
}

template <class S>
S eval_quartic_lrl(int i, Chart chart, const VecX<S>& q, const VecX<S>& p,
                   const ModelParams& mp) {
  const S L = eval_lrl_component(i, chart, q, p, mp.kappa, mp.K);
  const S inner = L - lrl_centrifugal_shift(i, 0, chart, q, mp.b, mp.kappa);
  S out = inner * inner;
  if (mp.b[i - 1] != 0.0) {
    if (value_of(q[i - 1]) == 0.0)
      throw CentrifugalSingularityError("q_i = 0 with b_i != 0 in quartic integral");
    const VecX<S> P = translation_vector(chart, q, p, mp.kappa);
    const S D = P.dot(q);
    out += mp.b[i - 1] / (q[i - 1] * q[i - 1]) * D * D;
  }
  return out;
}

}  // namespace detail

/// Single evaluation dispatch; scalar-generic so dual numbers yield exact
/// derivatives of every catalog entry.
template <class S>
S eval_observable_vars(const ObservableId& id, const ModelParams& mp, Chart chart,
                       const VecX<S>& q, const VecX<S>& p) {
  const int N = static_cast<int>(q.size());
  const auto check_index = [&](int k) {
    if (k < 1 || k > N) throw IndexError("observable index out of range");
  };
  const auto check_window = [&](int m) {
    if (m < 2 || m > N) throw IndexError("Casimir window out of range");
  };
  switch (id.kind) {
    case Kind::Hamiltonian:
      return eval_H_gen_vars(chart, q, p, mp);
    case Kind::AngularMomentum:
      check_index(id.i);
      check_index(id.j);
      if (id.i >= id.j) throw IndexError("angular momentum requires i < j");
      return detail::eval_J(id.i, id.j, q, p);
    case Kind::Translation:
      check_index(id.i);
      return detail::translation_vector(chart, q, p, mp.kappa)[id.i - 1];
    case Kind::CasimirLeft:
      check_window(id.i);
      return detail::eval_casimir_window(1, id.i, q, p);
    case Kind::CasimirRight:
      check_window(id.i);
      return detail::eval_casimir_window(N - id.i + 1, N, q, p);
    case Kind::Lrl:
      check_index(id.i);
      return detail::eval_lrl_component(id.i, chart, q, p, mp.kappa, mp.K);
    case Kind::GenCasimirLeft:
      check_window(id.i);
      return detail::eval_gen_casimir_window(1, id.i, q, p, mp.b);
    case Kind::GenCasimirRight:
      check_window(id.i);
      return detail::eval_gen_casimir_window(N - id.i + 1, N, q, p, mp.b);
    case Kind::QuarticLrl:
      check_index(id.i);
      return detail::eval_quartic_lrl(id.i, chart, q, p, mp);
    case Kind::QuasiLrl: {
      check_index(id.i);
      if (mp.b[id.i - 1] != 0.0)
        throw ModelClassError("quasi-generalized integral requires b_i = 0");
      const S L = detail::eval_lrl_component(id.i, chart, q, p, mp.kappa, mp.K);
      return L - detail::lrl_centrifugal_shift(id.i, id.i, chart, q, mp.b, mp.kappa);
    }
    case Kind::HiggsNumber:
      if (N != 2) throw IndexError("Higgs generators require N = 2");
      return detail::eval_J(1, 2, q, p);
    case Kind::HiggsCasimir: {
      if (N != 2) throw IndexError("Higgs Casimir requires N = 2");
      if (mp.centrifugal_active()) throw ModelClassError("Higgs Casimir requires b = 0");
      const S L1 = detail::eval_lrl_component(1, chart, q, p, mp.kappa, mp.K);
      const S L2 = detail::eval_lrl_component(2, chart, q, p, mp.kappa, mp.K);
      const S J = detail::eval_J(1, 2, q, p);
      const S H = eval_H_kc_vars(chart, q, p, mp.kappa, mp.K);
      return L1 * L1 + L2 * L2 + mp.kappa * J * J * J * J - 2.0 * H * J * J;
    }
    case Kind::Lambda: {
      if (mp.centrifugal_active()) throw ModelClassError("Lambda requires b = 0");
      const S J2 = detail::eval_casimir_window(1, N, q, p);
      const S H = eval_H_kc_vars(chart, q, p, mp.kappa, mp.K);
      return 2.0 * (mp.kappa * J2 - H);
    }
    case Kind::CoalgebraJMinus:
      return q.squaredNorm();
    case Kind::CoalgebraJThree:
      return q.dot(p);
    case Kind::CoalgebraJPlus:
      return p.squaredNorm() + detail::centrifugal_sum(q, mp.b);
    case Kind::CoalgebraCasimir: {
      const S jm = q.squaredNorm();
      const S j3 = q.dot(p);
      const S jp = p.squaredNorm() + detail::centrifugal_sum(q, mp.b);
      return jm * jp - j3 * j3;
    }
    case Kind::CoordQ:
      check_index(id.i);
      return q[id.i - 1];
    case Kind::CoordP:
      check_index(id.i);
      return p[id.i - 1];
  }
  throw IndexError("unknown observable kind");
}

/// An evaluable phase-space function with exact gradients (see diffbracket.hpp).
struct Observable {
  ObservableId id;
  ModelParams params;

  double operator()(const PhasePoint& pt) const {
    return eval_observable_vars<double>(id, params, pt.chart, pt.q, pt.p);
  }
  std::string name() const { return observable_name(id); }
};

inline Observable make_observable(Kind kind, const ModelParams& mp, int i = 0, int j = 0) {
  return Observable{ObservableId{kind, i, j}, mp};
}

// Named evaluation entry points.
inline double eval_angular_momentum(int i, int j, const PhasePoint& pt) {
  ModelParams mp = ModelParams::kc(pt.dim(), 0.0);
  return eval_observable_vars<double>({Kind::AngularMomentum, i, j}, mp, pt.chart, pt.q, pt.p);
}
inline double eval_translation(int i, const PhasePoint& pt, double kappa) {
  ModelParams mp = ModelParams::kc(pt.dim(), kappa);
  return eval_observable_vars<double>({Kind::Translation, i}, mp, pt.chart, pt.q, pt.p);
}
enum class CasimirSide { Left, Right };
inline double eval_casimir(CasimirSide side, int m, const PhasePoint& pt) {
  ModelParams mp = ModelParams::kc(pt.dim(), 0.0);
  const Kind k = side == CasimirSide::Left ? Kind::CasimirLeft : Kind::CasimirRight;
  return eval_observable_vars<double>({k, m}, mp, pt.chart, pt.q, pt.p);
}
inline double eval_lrl(int i, const PhasePoint& pt, const ModelParams& mp) {
  return eval_observable_vars<double>({Kind::Lrl, i}, mp, pt.chart, pt.q, pt.p);
}
inline double eval_gen_casimir(CasimirSide side, int m, const PhasePoint& pt,
                               const ModelParams& mp) {
  const Kind k = side == CasimirSide::Left ? Kind::GenCasimirLeft : Kind::GenCasimirRight;
  return eval_observable_vars<double>({k, m}, mp, pt.chart, pt.q, pt.p);
}
inline double eval_quartic_lrl(int i, const PhasePoint& pt, const ModelParams& mp) {
  return eval_observable_vars<double>({Kind::QuarticLrl, i}, mp, pt.chart, pt.q, pt.p);
}
inline double eval_quasi_lrl(int i, const PhasePoint& pt, const ModelParams& mp) {
  return eval_observable_vars<double>({Kind::QuasiLrl, i}, mp, pt.chart, pt.q, pt.p);
}
inline double eval_lambda(const PhasePoint& pt, const ModelParams& mp) {
  return eval_observable_vars<double>({Kind::Lambda}, mp, pt.chart, pt.q, pt.p);
}

enum class HiggsKind { Number, Plus, Minus, Casimir };

/// Higgs-algebra generators for N = 2, b = 0. Number returns the real carrier
/// J_12 of i*J_12; the ladder components L1 +- i L2 are genuinely complex.
inline std::complex<double> eval_higgs(HiggsKind kind, const PhasePoint& pt,
                                       const ModelParams& mp) {
  if (pt.dim() != 2) throw IndexError("Higgs generators require N = 2");
  if (mp.centrifugal_active()) throw ModelClassError("Higgs generators require b = 0");
  switch (kind) {
    case HiggsKind::Number:
      return eval_angular_momentum(1, 2, pt);
    case HiggsKind::Plus:
      return {eval_lrl(1, pt, mp), eval_lrl(2, pt, mp)};
    case HiggsKind::Minus:
      return {eval_lrl(1, pt, mp), -eval_lrl(2, pt, mp)};
    case HiggsKind::Casimir:
      return eval_observable_vars<double>({Kind::HiggsCasimir}, mp, pt.chart, pt.q, pt.p);
  }
  throw IndexError("unknown Higgs kind");
}

/// Mechanically enumerable catalog of every observable that is well defined
/// for the given model parameters.
std::vector<Observable> observable_catalog(const ModelParams& mp);

}  // namespace ckepler
