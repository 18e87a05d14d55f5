#include <doctest.h>

#include <random>

#include "ckepler/observables.hpp"

using namespace ckepler;

namespace {

PhasePoint make(Chart c, std::initializer_list<double> q, std::initializer_list<double> p) {
  PhasePoint pt;
  pt.chart = c;
  pt.q = Eigen::VectorXd::Map(q.begin(), static_cast<int>(q.size()));
  pt.p = Eigen::VectorXd::Map(p.begin(), static_cast<int>(p.size()));
  return pt;
}

ModelParams with_b(int n, double kappa, double K, std::initializer_list<double> b) {
  ModelParams mp = ModelParams::kc(n, kappa, K);
  mp.b = Eigen::VectorXd::Map(b.begin(), static_cast<int>(b.size()));
  return mp;
}

void check_chart_invariant(const Observable& obs, double kappa, int n, std::uint64_t seed,
                           double tol = 1e-12) {
  std::mt19937_64 rng(seed);
  PointSampler sampler{n, kappa, true};
  for (int k = 0; k < 100; ++k) {
    const PhasePoint a = sampler(rng);
    const PhasePoint b = poincare_to_beltrami(a, kappa);
    const double va = obs(a);
    const double vb = obs(b);
    CHECK(std::abs(va - vb) <= tol * std::max(1.0, std::abs(va)));
  }
}

}  // namespace

TEST_CASE("angular momentum") {
  CHECK(eval_angular_momentum(1, 2, make(Chart::Poincare, {1, 2}, {3, 4})) ==
        doctest::Approx(-2.0));
  // parallel momentum
  CHECK(eval_angular_momentum(1, 2, make(Chart::Poincare, {1, 2}, {3, 6})) ==
        doctest::Approx(0.0));
  check_chart_invariant(make_observable(Kind::AngularMomentum, ModelParams::kc(2, 1.0), 1, 2),
                        1.0, 2, 101);
  CHECK_THROWS_AS(eval_angular_momentum(2, 1, make(Chart::Poincare, {1, 2}, {3, 4})),
                  IndexError);
}

TEST_CASE("curved translations") {
  auto flat = make(Chart::Poincare, {0.2, 0.1}, {2, 4});
  CHECK(eval_translation(1, flat, 0.0) == doctest::Approx(1.0));
  CHECK(eval_translation(2, flat, 0.0) == doctest::Approx(2.0));
  auto curved = make(Chart::Beltrami, {1, 0}, {1, 1});
  CHECK(eval_translation(1, curved, 1.0) == doctest::Approx(2.0));
  CHECK(eval_translation(2, curved, 1.0) == doctest::Approx(1.0));
  for (int i : {1, 2, 3})
    check_chart_invariant(make_observable(Kind::Translation, ModelParams::kc(3, -1.0), i), -1.0,
                          3, 102);
}

TEST_CASE("rotation Casimir chains") {
  auto pt2 = make(Chart::Poincare, {1, 2}, {3, 4});
  CHECK(eval_casimir(CasimirSide::Left, 2, pt2) == doctest::Approx(4.0));
  auto pt3 = make(Chart::Poincare, {1, 2, 3}, {4, 5, 6});
  const double j23 = 2.0 * 6.0 - 3.0 * 5.0;
  CHECK(eval_casimir(CasimirSide::Right, 2, pt3) == doctest::Approx(j23 * j23));
  CHECK(eval_casimir(CasimirSide::Left, 3, pt3) ==
        doctest::Approx(eval_casimir(CasimirSide::Right, 3, pt3)));
  CHECK_THROWS_AS(eval_casimir(CasimirSide::Left, 4, pt3), IndexError);
}

TEST_CASE("LRL components") {
  const ModelParams mp = ModelParams::kc(2, 0.0);
  const auto circular = make(Chart::Beltrami, {1, 0}, {0, 1});
  CHECK(eval_lrl(1, circular, mp) == doctest::Approx(0.0));
  CHECK(eval_lrl(2, circular, mp) == doctest::Approx(0.0));
  check_chart_invariant(make_observable(Kind::Lrl, ModelParams::kc(2, 1.0), 1), 1.0, 2, 103);
  CHECK_THROWS_AS(eval_lrl(1, make(Chart::Beltrami, {0, 0}, {1, 1}), mp), OriginError);
}

TEST_CASE("generalized Casimir chains") {
  const ModelParams mp = with_b(2, 0.0, 1.0, {1, 1});
  CHECK(eval_gen_casimir(CasimirSide::Left, 2, make(Chart::Poincare, {1, 2}, {3, 4}), mp) ==
        doctest::Approx(10.25));

  // b = 0 degenerates to the plain chains
  std::mt19937_64 rng(201);
  const ModelParams kc = ModelParams::kc(3, 1.0);
  PointSampler sampler{3, 1.0};
  for (int k = 0; k < 50; ++k) {
    const PhasePoint pt = sampler(rng);
    for (int m : {2, 3}) {
      CHECK(eval_gen_casimir(CasimirSide::Left, m, pt, kc) ==
            eval_casimir(CasimirSide::Left, m, pt));
      CHECK(eval_gen_casimir(CasimirSide::Right, m, pt, kc) ==
            eval_casimir(CasimirSide::Right, m, pt));
    }
  }
  const ModelParams gen = with_b(3, -1.0, 1.0, {0.3, 0.5, 0.7});
  check_chart_invariant(make_observable(Kind::GenCasimirLeft, gen, 3), -1.0, 3, 104);
  check_chart_invariant(make_observable(Kind::GenCasimirRight, gen, 2), -1.0, 3, 105);
}

TEST_CASE("quartic hidden integral") {
  // b = 0: collapses to the squared LRL component
  std::mt19937_64 rng(301);
  for (double kappa : {-1.0, 0.0, 1.0}) {
    const ModelParams kc = ModelParams::kc(2, kappa);
    PointSampler sampler{2, kappa, true};
    for (int k = 0; k < 100; ++k) {
      const PhasePoint pt = sampler(rng);
      const double l = eval_lrl(1, pt, kc);
      CHECK(eval_quartic_lrl(1, pt, kc) ==
            doctest::Approx(l * l).epsilon(1e-13));
    }
  }

  // direct evaluation of the factored form at a rest point: L_1 = K/sqrt(2),
  // centrifugal shift = b_1/q_1^2 q_1 + b_2/q_2^2 q_1 = 2 in Beltrami variables
  const ModelParams mp = with_b(2, 0.0, 1.0, {1, 1});
  const auto rest = make(Chart::Beltrami, {1, 1}, {0, 0});
  const double inner = 1.0 / std::sqrt(2.0) - 2.0;
  CHECK(eval_quartic_lrl(1, rest, mp) == doctest::Approx(inner * inner).epsilon(1e-14));

  const ModelParams gen = with_b(3, 1.0, 1.0, {0.3, 0.5, 0.7});
  check_chart_invariant(make_observable(Kind::QuarticLrl, gen, 2), 1.0, 3, 106, 1e-11);
}

TEST_CASE("quasi-generalized integral") {
  // all b = 0: equals the LRL component
  const ModelParams kc = ModelParams::kc(2, -1.0);
  std::mt19937_64 rng(401);
  PointSampler sampler{2, -1.0, true};
  for (int k = 0; k < 50; ++k) {
    const PhasePoint pt = sampler(rng);
    CHECK(eval_quasi_lrl(1, pt, kc) == doctest::Approx(eval_lrl(1, pt, kc)).epsilon(1e-14));
  }

  const ModelParams mp = with_b(2, 0.0, 1.0, {0, 1});
  const auto rest = make(Chart::Beltrami, {1, 1}, {0, 0});
  CHECK(eval_quasi_lrl(1, rest, mp) ==
        doctest::Approx(1.0 / std::sqrt(2.0) - 1.0).epsilon(1e-14));

  const ModelParams quasi = with_b(3, 1.0, 1.0, {0, 0.5, 0.7});
  check_chart_invariant(make_observable(Kind::QuasiLrl, quasi, 1), 1.0, 3, 107);

  CHECK_THROWS_AS(eval_quasi_lrl(2, rest, mp), ModelClassError);
}

TEST_CASE("Higgs generators and Casimir") {
  const ModelParams mp = ModelParams::kc(2, 0.0);
  const auto circular = make(Chart::Beltrami, {1, 0}, {0, 1});
  CHECK(eval_higgs(HiggsKind::Number, circular, mp).real() == doctest::Approx(1.0));
  CHECK(eval_higgs(HiggsKind::Casimir, circular, mp).real() == doctest::Approx(1.0));

  std::mt19937_64 rng(501);
  for (double kappa : {-1.0, 0.0, 1.0})
    for (double K : {0.5, 1.0, 2.0}) {
      const ModelParams m = ModelParams::kc(2, kappa, K);
      PointSampler sampler{2, kappa};
      for (int k = 0; k < 50; ++k) {
        const PhasePoint pt = sampler(rng);
        const double c = eval_higgs(HiggsKind::Casimir, pt, m).real();
        CHECK(std::abs(c - K * K) <= 1e-10 * std::max(1.0, K * K));
        // ladder components assemble from the LRL vector
        const auto plus = eval_higgs(HiggsKind::Plus, pt, m);
        CHECK(plus.real() == doctest::Approx(eval_lrl(1, pt, m)));
        CHECK(plus.imag() == doctest::Approx(eval_lrl(2, pt, m)));
      }
    }

  const ModelParams mp3 = ModelParams::kc(3, 0.0);
  CHECK_THROWS_AS(eval_higgs(HiggsKind::Casimir, make(Chart::Beltrami, {1, 0, 0}, {0, 1, 0}), mp3),
                  IndexError);
}

TEST_CASE("Lambda structure function") {
  const ModelParams mp = ModelParams::kc(2, 0.0);
  const auto circular = make(Chart::Beltrami, {1, 0}, {0, 1});
  CHECK(eval_lambda(circular, mp) == doctest::Approx(1.0));  // -2H with H = -1/2
  const ModelParams mp1 = ModelParams::kc(2, 1.0);
  const PhasePoint pt = make(Chart::Beltrami, {0.4, 0.3}, {0.7, -0.2});
  const double j = eval_angular_momentum(1, 2, pt);
  CHECK(eval_lambda(pt, mp1) ==
        doctest::Approx(2.0 * (j * j - eval_H_kc(pt, mp1))).epsilon(1e-14));
  CHECK_THROWS_AS(eval_lambda(pt, with_b(2, 1.0, 1.0, {1, 1})), ModelClassError);
}

TEST_CASE("catalog enumerates well-defined observables") {
  const ModelParams gen = with_b(3, 1.0, 1.0, {0.3, 0.5, 0.7});
  const auto cat = observable_catalog(gen);
  std::mt19937_64 rng(601);
  PointSampler sampler{3, 1.0, true};
  const PhasePoint pt = sampler(rng);
  for (const auto& obs : cat) {
    CHECK(std::isfinite(obs(pt)));
    CHECK_FALSE(obs.name().empty());
  }
  // KC catalog carries the LRL vector and Higgs entries at N = 2
  const auto kc2 = observable_catalog(ModelParams::kc(2, 1.0));
  bool has_higgs = false;
  for (const auto& obs : kc2) has_higgs = has_higgs || obs.name() == "higgs_casimir";
  CHECK(has_higgs);
}
