#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "ckepler/report.hpp"

using nlohmann::json;
using namespace ckepler;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitExpectationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSamplerError = 3;
constexpr int kExitIntegratorError = 4;

struct ConfigError : Error {
  using Error::Error;
};

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw ConfigError("unknown config key '" + key + "' in " + where);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CURVED_KEPLER_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

ObservableId parse_observable(const std::string& name) {
  auto index_after = [&](std::size_t pos) { return std::stoi(name.substr(pos)); };
  if (name == "H") return {Kind::Hamiltonian};
  if (name == "Lambda") return {Kind::Lambda};
  if (name == "J-") return {Kind::CoalgebraJMinus};
  if (name == "J3") return {Kind::CoalgebraJThree};
  if (name == "J+") return {Kind::CoalgebraJPlus};
  if (name == "coalgebra_casimir") return {Kind::CoalgebraCasimir};
  if (name == "higgs_number") return {Kind::HiggsNumber};
  if (name == "higgs_casimir") return {Kind::HiggsCasimir};
  if (name.rfind("J_", 0) == 0 && name.size() == 4)
    return {Kind::AngularMomentum, name[2] - '0', name[3] - '0'};
  if (name.rfind("P_", 0) == 0) return {Kind::Translation, index_after(2)};
  if (name.rfind("C^(", 0) == 0) return {Kind::CasimirLeft, index_after(3)};
  if (name.rfind("C_(", 0) == 0) return {Kind::CasimirRight, index_after(3)};
  if (name.rfind("Cg^(", 0) == 0) return {Kind::GenCasimirLeft, index_after(4)};
  if (name.rfind("Cg_(", 0) == 0) return {Kind::GenCasimirRight, index_after(4)};
  if (name.rfind("Lg_", 0) == 0) return {Kind::QuarticLrl, index_after(3)};
  if (name.rfind("Lqg_", 0) == 0) return {Kind::QuasiLrl, index_after(4)};
  if (name.rfind("L_", 0) == 0) return {Kind::Lrl, index_after(2)};
  if (name.rfind("q_", 0) == 0) return {Kind::CoordQ, index_after(2)};
  if (name.rfind("p_", 0) == 0) return {Kind::CoordP, index_after(2)};
  throw ConfigError("unknown observable name '" + name + "'");
}

struct CommonOptions {
  std::string config_path;
  std::string output_path;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
  std::optional<int> N;
  std::optional<double> kappa;
  std::optional<double> K;
  std::vector<double> b;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file; flags override its fields");
  cmd->add_option("--output,-o", opt.output_path, "output file path");
  cmd->add_option("--seed", opt.seed, "RNG seed (fallback: CURVED_KEPLER_SEED, then 0)");
  cmd->add_flag("--deterministic", opt.deterministic,
                "omit timestamps so identical runs are byte-identical");
  cmd->add_option("--N", opt.N, "dimension (>= 2)");
  cmd->add_option("--kappa", opt.kappa, "sectional curvature");
  cmd->add_option("--K", opt.K, "Kepler-Coulomb coupling");
  cmd->add_option("--b", opt.b, "centrifugal strengths (N values)");
}

json load_config(const CommonOptions& opt) {
  if (opt.config_path.empty()) return json::object();
  std::ifstream in(opt.config_path);
  if (!in) throw ConfigError("cannot open config file '" + opt.config_path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

ModelParams resolve_model(const json& config, const CommonOptions& opt) {
  json model = config.value("model", json::object());
  reject_unknown_keys(model, {"N", "kappa", "K", "b"}, "model");
  if (opt.N) model["N"] = *opt.N;
  if (opt.kappa) model["kappa"] = *opt.kappa;
  if (opt.K) model["K"] = *opt.K;
  if (!opt.b.empty()) model["b"] = opt.b;
  if (!model.contains("N")) throw ConfigError("model dimension N is required (--N or config)");
  try {
    return model_params_from_json(model);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::uint64_t resolve_seed(const json& config, const CommonOptions& opt) {
  if (opt.seed) return *opt.seed;
  if (config.contains("seed")) return config.at("seed").get<std::uint64_t>();
  return default_seed();
}

json report_header(const std::string& command, const ModelParams& mp, std::uint64_t seed,
                   bool deterministic) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["model"] = to_json(mp);
  j["seed"] = seed;
  if (!deterministic) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  }
  return j;
}

void write_output(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << j.dump(2) << "\n";
}

int run_verify(const CommonOptions& opt, std::vector<std::string> suites,
               std::optional<int> sample_flag, std::optional<double> tol_flag) {
  const json config = load_config(opt);
  reject_unknown_keys(config, {"model", "seed", "verify", "output"}, "config root");
  const json vcfg = config.value("verify", json::object());
  reject_unknown_keys(vcfg, {"suites", "sample", "tolerance"}, "verify");
  const ModelParams mp = resolve_model(config, opt);
  const std::uint64_t seed = resolve_seed(config, opt);
  if (suites.empty() && vcfg.contains("suites"))
    suites = vcfg.at("suites").get<std::vector<std::string>>();
  if (suites.empty()) throw ConfigError("no verify suites selected (--suite)");
  const int sample = sample_flag ? *sample_flag : vcfg.value("sample", 200);
  const double tol = tol_flag ? *tol_flag : vcfg.value("tolerance", kBracketTolerance);

  json out = report_header("verify", mp, seed, opt.deterministic);
  json jsuites = json::object();
  bool all_pass = true;
  for (const auto& name : suites) {
    std::vector<AlgebraReport> reports;
    if (name == "involution") {
      for (auto side : {CasimirSide::Left, CasimirSide::Right})
        reports.push_back(involution_check(involution_chain(mp, side), mp, sample, seed, tol));
    } else {
      reports = run_identity_suite(identity_suite(name, mp), mp, sample, seed, tol);
    }
    json arr = json::array();
    for (const auto& rep : reports) {
      arr.push_back(to_json(rep));
      all_pass = all_pass && rep.pass;
    }
    jsuites[name] = arr;
  }
  out["suites"] = jsuites;
  out["pass"] = all_pass;
  write_output(out, opt.output_path);
  return all_pass ? kExitPass : kExitExpectationFailure;
}

int run_rank(const CommonOptions& opt, std::optional<int> points_flag,
             std::optional<double> svtol_flag, std::optional<int> expect_flag,
             std::optional<int> lrl_flag, bool no_quartic,
             const std::vector<std::string>& set_names) {
  const json config = load_config(opt);
  reject_unknown_keys(config, {"model", "seed", "rank", "output"}, "config root");
  const json rcfg = config.value("rank", json::object());
  reject_unknown_keys(rcfg,
                      {"points", "sv_tolerance", "expected_rank", "lrl_index",
                       "include_quartic", "set"},
                      "rank");
  const ModelParams mp = resolve_model(config, opt);
  const std::uint64_t seed = resolve_seed(config, opt);
  const int points = points_flag ? *points_flag : rcfg.value("points", 20);
  const double svtol = svtol_flag ? *svtol_flag : rcfg.value("sv_tolerance", kRankSvTolerance);
  const int lrl_index = lrl_flag ? *lrl_flag : rcfg.value("lrl_index", 1);
  const bool quartic = no_quartic ? false : rcfg.value("include_quartic", true);
  const int expected =
      expect_flag ? *expect_flag
                  : rcfg.value("expected_rank", quartic ? 2 * mp.N - 1 : 2 * mp.N - 2);

  std::vector<Observable> set;
  std::vector<std::string> names = set_names;
  if (names.empty() && rcfg.contains("set"))
    names = rcfg.at("set").get<std::vector<std::string>>();
  if (!names.empty()) {
    for (const auto& n : names) set.push_back(Observable{parse_observable(n), mp});
  } else {
    set = independence_set(mp, lrl_index, quartic);
  }

  const IndependenceReport rep = independence_rank(set, mp, points, seed, svtol);
  json out = report_header("rank", mp, seed, opt.deterministic);
  out["report"] = to_json(rep);
  out["expected_rank"] = expected;
  out["pass"] = rep.modal_rank == expected;
  write_output(out, opt.output_path);
  return rep.modal_rank == expected ? kExitPass : kExitExpectationFailure;
}

int run_simulate(const CommonOptions& opt, std::optional<double> step_flag,
                 std::optional<long> steps_flag, const std::string& method_flag,
                 const std::vector<std::string>& emit_flags,
                 const std::vector<std::string>& obs_names) {
  const json config = load_config(opt);
  reject_unknown_keys(config, {"model", "seed", "simulate", "output"}, "config root");
  const json scfg = config.value("simulate", json::object());
  reject_unknown_keys(
      scfg, {"start", "step", "steps", "method", "newton_tol", "newton_max_iter", "observables"},
      "simulate");
  const ModelParams mp = resolve_model(config, opt);
  const std::uint64_t seed = resolve_seed(config, opt);

  PhasePoint start;
  if (scfg.contains("start")) {
    start = phase_point_from_json(scfg.at("start"));
    if (start.dim() != mp.N) throw ConfigError("start state dimension does not match model N");
  } else {
    start = sample_points(mp, 1, seed)[0];
  }

  IntegratorConfig cfg;
  cfg.step = step_flag ? *step_flag : scfg.value("step", 1e-3);
  cfg.steps = steps_flag ? *steps_flag : scfg.value("steps", 1000L);
  cfg.newton_tol = scfg.value("newton_tol", 1e-12);
  cfg.newton_max_iter = scfg.value("newton_max_iter", 25);
  const std::string method = !method_flag.empty() ? method_flag
                                                  : scfg.value("method", "implicit-midpoint");
  if (method == "implicit-midpoint")
    cfg.method = IntegratorMethod::ImplicitMidpoint;
  else if (method == "rk4-reference")
    cfg.method = IntegratorMethod::Rk4Reference;
  else
    throw ConfigError("unknown method '" + method + "'");

  std::vector<Observable> observables;
  std::vector<std::string> names = obs_names;
  if (names.empty() && scfg.contains("observables"))
    names = scfg.at("observables").get<std::vector<std::string>>();
  if (names.empty()) {
    observables = independence_set(mp, 1);
    for (int m = 2; m <= mp.N - 1; ++m)
      observables.push_back(Observable{
          ObservableId{mp.centrifugal_active() ? Kind::GenCasimirRight : Kind::CasimirRight, m},
          mp});
  } else {
    for (const auto& n : names) observables.push_back(Observable{parse_observable(n), mp});
  }

  std::set<std::string> emit(emit_flags.begin(), emit_flags.end());
  if (emit.empty()) emit = {"json", "csv"};

  const Observable H{ObservableId{Kind::Hamiltonian}, mp};
  Trajectory traj;
  int exit_code = kExitPass;
  try {
    traj = integrate(H, start, cfg, observables);
  } catch (const IntegratorError& e) {
    std::cerr << "integration aborted at step " << e.step_index << ": " << e.what() << "\n";
    exit_code = kExitIntegratorError;  // partial trajectory is not recoverable from here
  }

  const auto drift = drift_report(traj);
  const std::string base = opt.output_path.empty() ? "trajectory" : opt.output_path;
  if (emit.count("json")) {
    json out = report_header("simulate", mp, seed, opt.deterministic);
    out.update(trajectory_to_json(traj, drift));
    std::ofstream f(base + ".json");
    f << out.dump(2) << "\n";
  }
  if (emit.count("csv")) {
    std::ofstream f(base + ".csv");
    trajectory_to_csv(traj, f);
  }
  for (const auto& e : drift)
    std::cout << e.observable << " max_drift=" << e.max_drift
              << " final_drift=" << e.final_drift << "\n";
  return exit_code;
}

int run_transform(const CommonOptions& opt, const std::string& input,
                  const std::string& target) {
  const json config = load_config(opt);
  const ModelParams mp = resolve_model(config, opt);
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot open state file '" + input + "'");
  json jstate;
  try {
    jstate = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("state parse error: ") + e.what());
  }
  PhasePoint pt = phase_point_from_json(jstate);
  Chart to = target == "beltrami" ? Chart::Beltrami : Chart::Poincare;
  if (target != "beltrami" && target != "poincare")
    throw ConfigError("--to must be 'poincare' or 'beltrami'");
  const PhasePoint out_pt = to_chart(pt, to, mp.kappa);
  json out;
  out["schema_version"] = kSchemaVersion;
  out.update(to_json(out_pt));
  write_output(out, opt.output_path);
  return kExitPass;
}

int run_limits(const CommonOptions& opt) {
  const json config = load_config(opt);
  reject_unknown_keys(config, {"model", "seed", "output"}, "config root");
  const ModelParams mp = resolve_model(config, opt);
  const std::uint64_t seed = resolve_seed(config, opt);
  const auto reports = limit_checks(mp.N, mp.kappa, seed);
  json out = report_header("limits", mp, seed, opt.deterministic);
  json arr = json::array();
  bool all_pass = true;
  for (const auto& rep : reports) {
    arr.push_back(to_json(rep));
    all_pass = all_pass && rep.pass;
  }
  out["checks"] = arr;
  out["pass"] = all_pass;
  write_output(out, opt.output_path);
  return all_pass ? kExitPass : kExitExpectationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Kepler-Coulomb systems on curved spaces: verification and dynamics"};
  app.require_subcommand(1);

  CommonOptions vopt, ropt, sopt, topt, lopt;

  auto* verify = app.add_subcommand("verify", "run bracket-identity suites");
  add_common(verify, vopt);
  std::vector<std::string> suites;
  std::optional<int> sample;
  std::optional<double> tolerance;
  verify->add_option("--suite", suites, "suite names (repeatable); 'involution' for the chains");
  verify->add_option("--sample", sample, "points per identity");
  verify->add_option("--tolerance", tolerance, "max relative residual");

  auto* rank = app.add_subcommand("rank", "stacked-gradient independence rank");
  add_common(rank, ropt);
  std::optional<int> points, expected, lrl_index;
  std::optional<double> svtol;
  bool no_quartic = false;
  std::vector<std::string> rank_set;
  rank->add_option("--points", points, "sample points");
  rank->add_option("--sv-tolerance", svtol, "singular-value cutoff, relative to the largest");
  rank->add_option("--expect", expected, "expected modal rank (default 2N-1)");
  rank->add_option("--lrl-index", lrl_index, "which hidden-integral component to include");
  rank->add_flag("--no-quartic", no_quartic, "drop the hidden integral from the set");
  rank->add_option("--set", rank_set, "explicit observable names instead of the default set");

  auto* simulate = app.add_subcommand("simulate", "integrate Hamilton's equations");
  add_common(simulate, sopt);
  std::optional<double> step;
  std::optional<long> steps;
  std::string method;
  std::vector<std::string> emit, obs_names;
  simulate->add_option("--step", step, "time step");
  simulate->add_option("--steps", steps, "number of steps");
  simulate->add_option("--method", method, "implicit-midpoint | rk4-reference");
  simulate->add_option("--emit", emit, "json and/or csv (default both)");
  simulate->add_option("--observable", obs_names, "observables to log (default: all integrals)");

  auto* transform = app.add_subcommand("transform", "chart conversion of a state file");
  add_common(transform, topt);
  std::string input, target;
  transform->add_option("--input", input, "state JSON file")->required();
  transform->add_option("--to", target, "target chart: poincare | beltrami")->required();

  auto* limits = app.add_subcommand("limits", "b -> 0 and kappa -> 0 sweeps");
  add_common(limits, lopt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (verify->parsed()) return run_verify(vopt, suites, sample, tolerance);
    if (rank->parsed())
      return run_rank(ropt, points, svtol, expected, lrl_index, no_quartic, rank_set);
    if (simulate->parsed()) return run_simulate(sopt, step, steps, method, emit, obs_names);
    if (transform->parsed()) return run_transform(topt, input, target);
    if (limits->parsed()) return run_limits(lopt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SamplerError& e) {
    std::cerr << "sampler error: " << e.what() << "\n";
    return kExitSamplerError;
  } catch (const IntegratorError& e) {
    std::cerr << "integrator error at step " << e.step_index << ": " << e.what() << "\n";
    return kExitIntegratorError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
