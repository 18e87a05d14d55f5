#include "ckepler/observables.hpp"

#include <fmt/core.h>

namespace ckepler {

std::string observable_name(const ObservableId& id) {
  switch (id.kind) {
    case Kind::Hamiltonian: return "H";
    case Kind::AngularMomentum: return fmt::format("J_{}{}", id.i, id.j);
    case Kind::Translation: return fmt::format("P_{}", id.i);
    case Kind::CasimirLeft: return fmt::format("C^({})", id.i);
    case Kind::CasimirRight: return fmt::format("C_({})", id.i);
    case Kind::Lrl: return fmt::format("L_{}", id.i);
    case Kind::GenCasimirLeft: return fmt::format("Cg^({})", id.i);
    case Kind::GenCasimirRight: return fmt::format("Cg_({})", id.i);
    case Kind::QuarticLrl: return fmt::format("Lg_{}", id.i);
    case Kind::QuasiLrl: return fmt::format("Lqg_{}", id.i);
    case Kind::HiggsNumber: return "higgs_number";
    case Kind::HiggsCasimir: return "higgs_casimir";
    case Kind::Lambda: return "Lambda";
    case Kind::CoalgebraJMinus: return "J-";
    case Kind::CoalgebraJThree: return "J3";
    case Kind::CoalgebraJPlus: return "J+";
    case Kind::CoalgebraCasimir: return "coalgebra_casimir";
    case Kind::CoordQ: return fmt::format("q_{}", id.i);
    case Kind::CoordP: return fmt::format("p_{}", id.i);
  }
  return "?";
}

std::vector<Observable> observable_catalog(const ModelParams& mp) {
  std::vector<Observable> out;
  const int N = mp.N;
  auto add = [&](Kind k, int i = 0, int j = 0) { out.push_back({ObservableId{k, i, j}, mp}); };

  add(Kind::Hamiltonian);
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) add(Kind::AngularMomentum, i, j);
  for (int i = 1; i <= N; ++i) add(Kind::Translation, i);
  for (int m = 2; m <= N; ++m) {
    add(Kind::CasimirLeft, m);
    add(Kind::CasimirRight, m);
  }
  const bool generalized = mp.centrifugal_active();
  if (!generalized) {
    for (int i = 1; i <= N; ++i) add(Kind::Lrl, i);
    add(Kind::Lambda);
    if (N == 2) {
      add(Kind::HiggsNumber);
      add(Kind::HiggsCasimir);
    }
  } else {
    for (int m = 2; m <= N; ++m) {
      add(Kind::GenCasimirLeft, m);
      add(Kind::GenCasimirRight, m);
    }
  }
  for (int i = 1; i <= N; ++i) {
    add(Kind::QuarticLrl, i);
    if (mp.b[i - 1] == 0.0) add(Kind::QuasiLrl, i);
  }
  add(Kind::CoalgebraJMinus);
  add(Kind::CoalgebraJThree);
  add(Kind::CoalgebraJPlus);
  add(Kind::CoalgebraCasimir);
  return out;
}

}  // namespace ckepler
