#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ckepler/diffbracket.hpp"

namespace ckepler {

/// One checkable bracket identity: a normalized residual evaluated per point.
struct IdentitySpec {
  std::string name;
  std::string anchor;  // human-readable statement of the relation
  std::function<double(const PhasePoint&)> residual;
};

struct AlgebraReport {
  std::string identity;
  std::string anchor;
  int samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
};

struct IndependenceReport {
  std::vector<std::string> set;
  int points = 0;
  double sv_tolerance = 0.0;
  std::vector<std::vector<double>> singular_values;  // per point, nonincreasing
  std::vector<int> ranks;                            // per point
  std::vector<double> gap_ratios;  // smallest accepted / largest rejected sv, per point
  int modal_rank = 0;
};

inline constexpr double kBracketTolerance = 1e-10;
inline constexpr double kRankSvTolerance = 1e-8;

/// Named identity suites over the observable catalog. Known names:
/// so_n, so_kappa, lrl_vector, lrl_algebra, kc_source, gen_source, higgs,
/// quasi_pair, coalgebra, theorem, prop2, corollary.
std::vector<IdentitySpec> identity_suite(const std::string& suite, const ModelParams& mp);

std::vector<std::string> known_suites();

std::vector<AlgebraReport> run_identity_suite(const std::vector<IdentitySpec>& suite,
                                              const ModelParams& mp, int sample,
                                              std::uint64_t seed,
                                              double tolerance = kBracketTolerance);

/// All pairwise brackets within a set vanish at every sampled point.
AlgebraReport involution_check(const std::vector<Observable>& set, const ModelParams& mp,
                               int sample, std::uint64_t seed,
                               double tolerance = kBracketTolerance);

IndependenceReport independence_rank(const std::vector<Observable>& set, const ModelParams& mp,
                                     const std::vector<PhasePoint>& points,
                                     double sv_tolerance = kRankSvTolerance);

IndependenceReport independence_rank(const std::vector<Observable>& set, const ModelParams& mp,
                                     int points, std::uint64_t seed,
                                     double sv_tolerance = kRankSvTolerance);

/// b -> 0 deformation scaling and kappa -> 0 continuity checks.
std::vector<AlgebraReport> limit_checks(int N, double kappa, std::uint64_t seed);

/// Left or right involutive chain {H, C^(m)} of the model.
std::vector<Observable> involution_chain(const ModelParams& mp, CasimirSide side);

/// The 2N-1 integrals {H, left chain, right chain, quartic L^g_i} whose
/// stacked gradients realize the maximal-superintegrability rank.
std::vector<Observable> independence_set(const ModelParams& mp, int lrl_index,
                                         bool include_quartic = true);

std::vector<PhasePoint> sample_points(const ModelParams& mp, int count, std::uint64_t seed);

}  // namespace ckepler
