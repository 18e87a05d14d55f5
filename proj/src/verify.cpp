#include "ckepler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/core.h>

namespace ckepler {

namespace {

using Rhs = std::function<double(const PhasePoint&)>;

Rhs as_rhs(const Observable& obs) {
  return [obs](const PhasePoint& pt) { return obs(pt); };
}

Rhs scaled(double c, const Observable& obs) {
  return [c, obs](const PhasePoint& pt) { return c * obs(pt); };
}

IdentitySpec bracket_identity(std::string name, std::string anchor, Observable f, Observable g,
                              Rhs rhs = {}) {
  IdentitySpec s;
  s.name = std::move(name);
  s.anchor = std::move(anchor);
  s.residual = [f = std::move(f), g = std::move(g), rhs = std::move(rhs)](const PhasePoint& pt) {
    const BracketValue v = bracket(f, g, pt);
    const double r = rhs ? rhs(pt) : 0.0;
    return std::abs(v.value - r) / std::max({1.0, v.scale, std::abs(r)});
  };
  return s;
}

// Closed form of {H, P_i} for the KC system, in the point's own chart.
Rhs kc_source_rhs(int i, const ModelParams& mp) {
  return [i, mp](const PhasePoint& pt) {
    const double q2 = pt.q.squaredNorm();
    const double qi = pt.q[i - 1];
    const double qn = std::sqrt(q2);
    if (pt.chart == Chart::Poincare) {
      const double f = 1.0 + mp.kappa * q2;
      return mp.K * qi * f * f / (4.0 * qn * qn * qn);
    }
    return mp.K * qi * (1.0 + mp.kappa * q2) / (qn * qn * qn);
  };
}

// Closed form of {H^g, J_ij}.
Rhs gen_rotation_rhs(int i, int j, const ModelParams& mp) {
  return [i, j, mp](const PhasePoint& pt) {
    const double qi = pt.q[i - 1], qj = pt.q[j - 1];
    const double bi = mp.b[i - 1], bj = mp.b[j - 1];
    const double num = bi * std::pow(qj, 4) - bj * std::pow(qi, 4);
    const double den = std::pow(qi, 3) * std::pow(qj, 3);
    const double q2 = pt.q.squaredNorm();
    if (pt.chart == Chart::Poincare) {
      const double f = 1.0 + mp.kappa * q2;
      return num / (4.0 * den) * f * f;
    }
    return num / den * (1.0 + mp.kappa * q2);
  };
}

// Closed form of {H^g, P_i}.
Rhs gen_translation_rhs(int i, const ModelParams& mp) {
  return [i, mp](const PhasePoint& pt) {
    const double qi = pt.q[i - 1];
    const double bi = mp.b[i - 1];
    const double q2 = pt.q.squaredNorm();
    const double qn = std::sqrt(q2);
    if (pt.chart == Chart::Poincare) {
      const double f = 1.0 + mp.kappa * q2;
      return (2.0 * mp.K * std::pow(qi, 4) - bi * qn * qn * qn * (1.0 - mp.kappa * q2)) /
             (8.0 * std::pow(qi, 3) * qn * qn * qn) * f * f;
    }
    return (mp.K * std::pow(qi, 4) - bi * qn * qn * qn) /
           (std::pow(qi, 3) * qn * qn * qn) * (1.0 + mp.kappa * q2);
  };
}

Observable obs(Kind k, const ModelParams& mp, int i = 0, int j = 0) {
  return Observable{ObservableId{k, i, j}, mp};
}

void require_kc(const ModelParams& mp, const char* what) {
  if (mp.centrifugal_active())
    throw ModelClassError(fmt::format("{} suite requires b = 0", what));
}

}  // namespace

std::vector<std::string> known_suites() {
  return {"so_n",   "so_kappa",   "lrl_vector", "lrl_algebra", "kc_source", "gen_source",
          "higgs",  "quasi_pair", "coalgebra",  "theorem",     "prop2",     "corollary"};
}

std::vector<IdentitySpec> identity_suite(const std::string& suite, const ModelParams& mp) {
  std::vector<IdentitySpec> out;
  const int N = mp.N;

  if (suite == "so_n") {
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j)
        for (int k = j + 1; k <= N; ++k) {
          auto Jij = obs(Kind::AngularMomentum, mp, i, j);
          auto Jik = obs(Kind::AngularMomentum, mp, i, k);
          auto Jjk = obs(Kind::AngularMomentum, mp, j, k);
          out.push_back(bracket_identity(fmt::format("{{J_{0}{1},J_{0}{2}}}=J_{1}{2}", i, j, k),
                                         "so(N) rotation algebra", Jij, Jik, as_rhs(Jjk)));
          out.push_back(bracket_identity(fmt::format("{{J_{0}{1},J_{1}{2}}}=-J_{0}{2}", i, j, k),
                                         "so(N) rotation algebra", Jij, Jjk,
                                         scaled(-1.0, Jik)));
          out.push_back(bracket_identity(fmt::format("{{J_{0}{2},J_{1}{2}}}=J_{0}{1}", i, j, k),
                                         "so(N) rotation algebra", Jik, Jjk, as_rhs(Jij)));
        }
    return out;
  }

  if (suite == "so_kappa") {
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) {
        auto Jij = obs(Kind::AngularMomentum, mp, i, j);
        for (int k = 1; k <= N; ++k) {
          Rhs rhs;
          if (k == i)
            rhs = as_rhs(obs(Kind::Translation, mp, j));
          else if (k == j)
            rhs = scaled(-1.0, obs(Kind::Translation, mp, i));
          out.push_back(bracket_identity(
              fmt::format("{{J_{}{},P_{}}}", i, j, k), "so_kappa(N+1) translation law", Jij,
              obs(Kind::Translation, mp, k), std::move(rhs)));
        }
        out.push_back(bracket_identity(
            fmt::format("{{P_{0},P_{1}}}=kappa*J_{0}{1}", i, j), "so_kappa(N+1) curvature term",
            obs(Kind::Translation, mp, i), obs(Kind::Translation, mp, j),
            scaled(mp.kappa, Jij)));
      }
    return out;
  }

  if (suite == "lrl_vector") {
    require_kc(mp, "lrl_vector");
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j)
        for (int k = 1; k <= N; ++k) {
          Rhs rhs;
          if (k == i)
            rhs = as_rhs(obs(Kind::Lrl, mp, j));
          else if (k == j)
            rhs = scaled(-1.0, obs(Kind::Lrl, mp, i));
          out.push_back(bracket_identity(fmt::format("{{J_{}{},L_{}}}", i, j, k),
                                         "LRL components transform as an N-vector",
                                         obs(Kind::AngularMomentum, mp, i, j),
                                         obs(Kind::Lrl, mp, k), std::move(rhs)));
        }
    return out;
  }

  if (suite == "lrl_algebra") {
    require_kc(mp, "lrl_algebra");
    auto lambda = obs(Kind::Lambda, mp);
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) {
        auto Jij = obs(Kind::AngularMomentum, mp, i, j);
        out.push_back(bracket_identity(
            fmt::format("{{L_{0},L_{1}}}=Lambda*J_{0}{1}", i, j), "cubic LRL bracket",
            obs(Kind::Lrl, mp, i), obs(Kind::Lrl, mp, j),
            [lambda, Jij](const PhasePoint& pt) { return lambda(pt) * Jij(pt); }));
      }
    return out;
  }

  if (suite == "kc_source") {
    require_kc(mp, "kc_source");
    auto H = obs(Kind::Hamiltonian, mp);
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j)
        out.push_back(bracket_identity(fmt::format("{{H,J_{}{}}}=0", i, j),
                                       "rotational invariance of the KC Hamiltonian", H,
                                       obs(Kind::AngularMomentum, mp, i, j)));
    for (int i = 1; i <= N; ++i)
      out.push_back(bracket_identity(fmt::format("{{H,P_{}}}", i),
                                     "KC source bracket with the translation generator", H,
                                     obs(Kind::Translation, mp, i), kc_source_rhs(i, mp)));
    return out;
  }

  if (suite == "gen_source") {
    auto H = obs(Kind::Hamiltonian, mp);
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j)
        out.push_back(bracket_identity(fmt::format("{{H,J_{}{}}}", i, j),
                                       "centrifugal breaking of rotational invariance", H,
                                       obs(Kind::AngularMomentum, mp, i, j),
                                       gen_rotation_rhs(i, j, mp)));
    for (int i = 1; i <= N; ++i)
      out.push_back(bracket_identity(fmt::format("{{H,P_{}}}", i),
                                     "generalized source bracket", H,
                                     obs(Kind::Translation, mp, i),
                                     gen_translation_rhs(i, mp)));
    return out;
  }

  if (suite == "higgs") {
    if (N != 2) throw IndexError("higgs suite requires N = 2");
    require_kc(mp, "higgs");
    auto J = obs(Kind::AngularMomentum, mp, 1, 2);
    auto L1 = obs(Kind::Lrl, mp, 1);
    auto L2 = obs(Kind::Lrl, mp, 2);
    auto H = obs(Kind::Hamiltonian, mp);
    out.push_back(bracket_identity("{J_12,L_1}=L_2", "Higgs ladder bracket", J, L1, as_rhs(L2)));
    out.push_back(
        bracket_identity("{J_12,L_2}=-L_1", "Higgs ladder bracket", J, L2, scaled(-1.0, L1)));
    out.push_back(bracket_identity(
        "{L_1,L_2}=2k*J^3-2H*J", "cubic Higgs bracket", L1, L2,
        [J, H, kappa = mp.kappa](const PhasePoint& pt) {
          const double j = J(pt);
          return 2.0 * kappa * j * j * j - 2.0 * H(pt) * j;
        }));
    IdentitySpec casimir;
    casimir.name = "higgs_casimir=K^2";
    casimir.anchor = "quartic Higgs Casimir equals the squared coupling";
    casimir.residual = [C = obs(Kind::HiggsCasimir, mp), K2 = mp.K * mp.K](const PhasePoint& pt) {
      return std::abs(C(pt) - K2) / std::max(1.0, K2);
    };
    out.push_back(std::move(casimir));
    return out;
  }

  if (suite == "quasi_pair") {
    int i = 0, j = 0;
    for (int k = 1; k <= N; ++k)
      if (mp.b[k - 1] == 0.0) {
        if (i == 0)
          i = k;
        else if (j == 0) {
          j = k;
          break;
        }
      }
    if (j == 0) throw ModelClassError("quasi_pair suite requires two vanishing b_i");
    auto H = obs(Kind::Hamiltonian, mp);
    auto Jij = obs(Kind::AngularMomentum, mp, i, j);
    auto Li = obs(Kind::QuasiLrl, mp, i);
    auto Lj = obs(Kind::QuasiLrl, mp, j);
    auto CN = obs(Kind::GenCasimirLeft, mp, N);
    out.push_back(bracket_identity(fmt::format("{{H,J_{}{}}}=0", i, j),
                                   "rotation generator conserved for two vanishing b", H, Jij));
    out.push_back(bracket_identity(fmt::format("{{H,Lqg_{}}}=0", i),
                                   "quasi-generalized integral conserved", H, Li));
    out.push_back(bracket_identity(fmt::format("{{H,Lqg_{}}}=0", j),
                                   "quasi-generalized integral conserved", H, Lj));
    out.push_back(bracket_identity(fmt::format("{{J_{0}{1},Lqg_{0}}}=Lqg_{1}", i, j),
                                   "vector law of the quasi pair", Jij, Li, as_rhs(Lj)));
    out.push_back(bracket_identity(fmt::format("{{J_{0}{1},Lqg_{1}}}=-Lqg_{0}", i, j),
                                   "vector law of the quasi pair", Jij, Lj, scaled(-1.0, Li)));
    out.push_back(bracket_identity(
        fmt::format("{{Lqg_{0},Lqg_{1}}}=2(k*CgN-H)J_{0}{1}", i, j),
        "nonlinear bracket of the quasi pair", Li, Lj,
        [CN, H, Jij, kappa = mp.kappa](const PhasePoint& pt) {
          return 2.0 * (kappa * CN(pt) - H(pt)) * Jij(pt);
        }));
    return out;
  }

  if (suite == "coalgebra") {
    auto Jm = obs(Kind::CoalgebraJMinus, mp);
    auto J3 = obs(Kind::CoalgebraJThree, mp);
    auto Jp = obs(Kind::CoalgebraJPlus, mp);
    out.push_back(
        bracket_identity("{J3,J+}=2J+", "sl(2,R) coalgebra", J3, Jp, scaled(2.0, Jp)));
    out.push_back(
        bracket_identity("{J3,J-}=-2J-", "sl(2,R) coalgebra", J3, Jm, scaled(-2.0, Jm)));
    out.push_back(
        bracket_identity("{J-,J+}=4J3", "sl(2,R) coalgebra", Jm, Jp, scaled(4.0, J3)));
    return out;
  }

  if (suite == "theorem") {
    auto H = obs(Kind::Hamiltonian, mp);
    for (int m = 2; m <= N; ++m) {
      out.push_back(bracket_identity(fmt::format("{{H,Cg^({})}}=0", m),
                                     "left-chain Casimir conserved", H,
                                     obs(Kind::GenCasimirLeft, mp, m)));
      out.push_back(bracket_identity(fmt::format("{{H,Cg_({})}}=0", m),
                                     "right-chain Casimir conserved", H,
                                     obs(Kind::GenCasimirRight, mp, m)));
    }
    for (int i = 1; i <= N; ++i)
      out.push_back(bracket_identity(fmt::format("{{H,Lg_{}}}=0", i),
                                     "quartic hidden integral conserved", H,
                                     obs(Kind::QuarticLrl, mp, i)));
    return out;
  }

  if (suite == "prop2") {
    require_kc(mp, "prop2");
    auto H = obs(Kind::Hamiltonian, mp);
    for (int m = 2; m <= N; ++m) {
      out.push_back(bracket_identity(fmt::format("{{H,C^({})}}=0", m),
                                     "left-chain Casimir conserved (KC)", H,
                                     obs(Kind::CasimirLeft, mp, m)));
      out.push_back(bracket_identity(fmt::format("{{H,C_({})}}=0", m),
                                     "right-chain Casimir conserved (KC)", H,
                                     obs(Kind::CasimirRight, mp, m)));
    }
    for (int i = 1; i <= N; ++i)
      out.push_back(bracket_identity(fmt::format("{{H,L_{}}}=0", i), "LRL component conserved",
                                     H, obs(Kind::Lrl, mp, i)));
    return out;
  }

  if (suite == "corollary") {
    if (mp.model_class() != ModelClass::QuasiGeneralized)
      throw ModelClassError("corollary suite requires exactly one or more vanishing b_i");
    const int i0 = mp.quasi_index() + 1;
    auto H = obs(Kind::Hamiltonian, mp);
    for (int m = 2; m <= N; ++m) {
      out.push_back(bracket_identity(fmt::format("{{H,Cg^({})}}=0", m),
                                     "left-chain Casimir conserved (quasi)", H,
                                     obs(Kind::GenCasimirLeft, mp, m)));
      out.push_back(bracket_identity(fmt::format("{{H,Cg_({})}}=0", m),
                                     "right-chain Casimir conserved (quasi)", H,
                                     obs(Kind::GenCasimirRight, mp, m)));
    }
    out.push_back(bracket_identity(fmt::format("{{H,Lqg_{}}}=0", i0),
                                   "quasi-generalized quadratic integral conserved", H,
                                   obs(Kind::QuasiLrl, mp, i0)));
    return out;
  }

  throw IndexError(fmt::format("unknown identity suite '{}'", suite));
}

std::vector<PhasePoint> sample_points(const ModelParams& mp, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointSampler sampler{mp.N, mp.kappa, mp.centrifugal_active()};
  std::vector<PhasePoint> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) pts.push_back(sampler(rng));
  return pts;
}

std::vector<AlgebraReport> run_identity_suite(const std::vector<IdentitySpec>& suite,
                                              const ModelParams& mp, int sample,
                                              std::uint64_t seed, double tolerance) {
  if (sample < 1) throw SamplerError("sample size must be >= 1");
  const auto pts = sample_points(mp, sample, seed);
  std::vector<AlgebraReport> reports;
  reports.reserve(suite.size());
  for (const auto& spec : suite) {
    AlgebraReport rep;
    rep.identity = spec.name;
    rep.anchor = spec.anchor;
    rep.samples = sample;
    rep.tolerance = tolerance;
    rep.seed = seed;
    double sum = 0.0;
    for (const auto& pt : pts) {
      // each identity is checked in both charts at canonically related points
      const double r_poi = spec.residual(pt);
      const double r_bel = spec.residual(poincare_to_beltrami(pt, mp.kappa));
      const double r = std::max(r_poi, r_bel);
      rep.max_residual = std::max(rep.max_residual, r);
      sum += r;
    }
    rep.mean_residual = sum / sample;
    rep.pass = rep.max_residual <= tolerance;
    reports.push_back(std::move(rep));
  }
  return reports;
}

AlgebraReport involution_check(const std::vector<Observable>& set, const ModelParams& mp,
                               int sample, std::uint64_t seed, double tolerance) {
  if (sample < 1) throw SamplerError("sample size must be >= 1");
  const auto pts = sample_points(mp, sample, seed);
  AlgebraReport rep;
  rep.identity = "involution";
  for (const auto& o : set) rep.identity += ":" + o.name();
  rep.anchor = "all pairwise Poisson brackets vanish";
  rep.samples = sample;
  rep.tolerance = tolerance;
  rep.seed = seed;
  double sum = 0.0;
  long count = 0;
  for (const auto& pt : pts)
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b) {
        const double r = bracket(set[a], set[b], pt).residual();
        rep.max_residual = std::max(rep.max_residual, r);
        sum += r;
        ++count;
      }
  rep.mean_residual = count ? sum / count : 0.0;
  rep.pass = rep.max_residual <= tolerance;
  return rep;
}

namespace {

// Rank of the stacked-gradient matrix at one point; rows are observables.
bool rank_at_point(const std::vector<Observable>& set, const PhasePoint& pt, double sv_tol,
                   std::vector<double>& svs, int& rank, double& gap) {
  const int n = pt.dim();
  Eigen::MatrixXd G(static_cast<int>(set.size()), 2 * n);
  for (std::size_t r = 0; r < set.size(); ++r)
    G.row(static_cast<int>(r)) = gradient(set[r], pt).stacked().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
  const auto& s = svd.singularValues();
  svs.assign(s.data(), s.data() + s.size());
  if (s.size() == 0 || s[0] == 0.0) return false;  // degenerate point
  const double cut = sv_tol * s[0];
  rank = 0;
  while (rank < s.size() && s[rank] > cut) ++rank;
  gap = rank < s.size() && s[rank] > 0.0 ? s[rank - 1] / s[rank] : s[rank - 1] / cut;
  return true;
}

}  // namespace

IndependenceReport independence_rank(const std::vector<Observable>& set, const ModelParams& mp,
                                     const std::vector<PhasePoint>& points, double sv_tolerance) {
  if (set.empty()) throw IndexError("independence set must be nonempty");
  IndependenceReport rep;
  for (const auto& o : set) rep.set.push_back(o.name());
  rep.sv_tolerance = sv_tolerance;
  std::map<int, int> counts;
  for (const auto& pt : points) {
    require_domain(pt, mp.kappa);
    std::vector<double> svs;
    int rank = 0;
    double gap = 0.0;
    if (!rank_at_point(set, pt, sv_tolerance, svs, rank, gap)) continue;  // flagged, skipped
    rep.singular_values.push_back(std::move(svs));
    rep.ranks.push_back(rank);
    rep.gap_ratios.push_back(gap);
    ++counts[rank];
  }
  rep.points = static_cast<int>(rep.ranks.size());
  int best = 0;
  for (auto [r, c] : counts)
    if (c > best) {
      best = c;
      rep.modal_rank = r;
    }
  return rep;
}

IndependenceReport independence_rank(const std::vector<Observable>& set, const ModelParams& mp,
                                     int points, std::uint64_t seed, double sv_tolerance) {
  return independence_rank(set, mp, sample_points(mp, points, seed), sv_tolerance);
}

std::vector<Observable> involution_chain(const ModelParams& mp, CasimirSide side) {
  std::vector<Observable> chain;
  chain.push_back(Observable{ObservableId{Kind::Hamiltonian}, mp});
  const bool gen = mp.centrifugal_active();
  const Kind k = side == CasimirSide::Left ? (gen ? Kind::GenCasimirLeft : Kind::CasimirLeft)
                                           : (gen ? Kind::GenCasimirRight : Kind::CasimirRight);
  for (int m = 2; m <= mp.N; ++m) chain.push_back(Observable{ObservableId{k, m}, mp});
  return chain;
}

std::vector<Observable> independence_set(const ModelParams& mp, int lrl_index,
                                         bool include_quartic) {
  const bool gen = mp.centrifugal_active();
  std::vector<Observable> set;
  set.push_back(Observable{ObservableId{Kind::Hamiltonian}, mp});
  for (int m = 2; m <= mp.N; ++m)
    set.push_back(Observable{ObservableId{gen ? Kind::GenCasimirLeft : Kind::CasimirLeft, m}, mp});
  for (int m = 2; m <= mp.N - 1; ++m)
    set.push_back(
        Observable{ObservableId{gen ? Kind::GenCasimirRight : Kind::CasimirRight, m}, mp});
  if (include_quartic)
    set.push_back(Observable{ObservableId{gen ? Kind::QuarticLrl : Kind::Lrl, lrl_index}, mp});
  return set;
}

std::vector<AlgebraReport> limit_checks(int N, double kappa, std::uint64_t seed) {
  std::vector<AlgebraReport> reports;
  ModelParams base = ModelParams::kc(N, kappa);
  const PhasePoint pt = sample_points(
      [&] {
        ModelParams m = base;
        m.b = Eigen::VectorXd::Ones(N);  // forces the sampler off coordinate hyperplanes
        return m;
      }(),
      1, seed)[0];

  auto report = [&](std::string name, std::string anchor, double residual, double tol) {
    AlgebraReport rep;
    rep.identity = std::move(name);
    rep.anchor = std::move(anchor);
    rep.samples = 1;
    rep.max_residual = rep.mean_residual = residual;
    rep.tolerance = tol;
    rep.pass = residual <= tol;
    rep.seed = seed;
    reports.push_back(std::move(rep));
  };

  // b -> 0: deviations of the deformed integrals scale linearly in epsilon.
  const std::vector<double> eps = {1e-2, 1e-4, 1e-6};
  std::vector<double> d_lrl, d_cas;
  for (double e : eps) {
    ModelParams mp = base;
    mp.b = e * Eigen::VectorXd::Ones(N);
    const double lg = eval_quartic_lrl(1, pt, mp);
    const double l = eval_lrl(1, pt, base);
    d_lrl.push_back(std::abs(lg - l * l));
    const double cg = eval_gen_casimir(CasimirSide::Left, N, pt, mp);
    const double c = eval_casimir(CasimirSide::Left, N, pt);
    d_cas.push_back(std::abs(cg - c));
  }
  auto slope_defect = [&](const std::vector<double>& d) {
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      const double slope =
          std::log(d[k] / d[k + 1]) / std::log(eps[k] / eps[k + 1]);
      worst = std::max(worst, std::abs(slope - 1.0));
    }
    return worst;
  };
  report("b_scaling_quartic", "quartic integral deforms linearly in b", slope_defect(d_lrl),
         0.15);
  report("b_scaling_casimir", "chain Casimirs deform linearly in b", slope_defect(d_cas), 1e-9);

  {
    const double lg = eval_quartic_lrl(1, pt, base);
    const double l = eval_lrl(1, pt, base);
    report("b_zero_exact", "b = 0 collapses the quartic integral to the squared LRL component",
           std::abs(lg - l * l) / std::max(1.0, l * l), 1e-12);
  }

  // kappa -> 0 continuity on the Beltrami chart at a fixed point.
  {
    PhasePoint bpt = poincare_to_beltrami(pt, kappa);
    ModelParams flat = ModelParams::kc(N, 0.0);
    ModelParams gen_flat = flat;
    gen_flat.b = 0.5 * Eigen::VectorXd::Ones(N);
    double worst = 0.0;
    for (double dk : {1e-8, -1e-8}) {
      ModelParams near = ModelParams::kc(N, dk);
      ModelParams gen_near = near;
      gen_near.b = gen_flat.b;
      worst = std::max(worst, std::abs(eval_H_gen(bpt, gen_near) - eval_H_gen(bpt, gen_flat)) /
                                  std::max(1.0, std::abs(eval_H_gen(bpt, gen_flat))));
      worst = std::max(worst, std::abs(eval_lrl(1, bpt, near) - eval_lrl(1, bpt, flat)) /
                                  std::max(1.0, std::abs(eval_lrl(1, bpt, flat))));
      worst = std::max(worst,
                       std::abs(eval_quartic_lrl(1, bpt, gen_near) -
                                eval_quartic_lrl(1, bpt, gen_flat)) /
                           std::max(1.0, std::abs(eval_quartic_lrl(1, bpt, gen_flat))));
    }
    report("kappa_continuity", "observables are continuous across kappa = 0", worst, 1e-6);
  }

  return reports;
}

}  // namespace ckepler
