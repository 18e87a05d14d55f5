#include "ckepler/report.hpp"

#include <ostream>

namespace ckepler {

using nlohmann::json;

json to_json(const ModelParams& mp) {
  json j;
  j["N"] = mp.N;
  j["kappa"] = mp.kappa;
  j["K"] = mp.K;
  j["b"] = std::vector<double>(mp.b.data(), mp.b.data() + mp.b.size());
  return j;
}

ModelParams model_params_from_json(const json& j) {
  ModelParams mp;
  mp.N = j.at("N").get<int>();
  if (mp.N < 2) throw ModelClassError("model dimension must be >= 2");
  mp.kappa = j.value("kappa", 0.0);
  mp.K = j.value("K", 1.0);
  if (j.contains("b")) {
    const auto b = j.at("b").get<std::vector<double>>();
    if (static_cast<int>(b.size()) != mp.N)
      throw ModelClassError("centrifugal vector b must have length N");
    mp.b = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
  } else {
    mp.b = Eigen::VectorXd::Zero(mp.N);
  }
  return mp;
}

json to_json(const AlgebraReport& rep) {
  json j;
  j["identity"] = rep.identity;
  j["anchor"] = rep.anchor;
  j["samples"] = rep.samples;
  j["max_residual"] = rep.max_residual;
  j["mean_residual"] = rep.mean_residual;
  j["tolerance"] = rep.tolerance;
  j["pass"] = rep.pass;
  j["seed"] = rep.seed;
  return j;
}

json to_json(const IndependenceReport& rep) {
  json j;
  j["set"] = rep.set;
  j["points"] = rep.points;
  j["sv_tolerance"] = rep.sv_tolerance;
  j["singular_values"] = rep.singular_values;
  j["ranks"] = rep.ranks;
  j["gap_ratios"] = rep.gap_ratios;
  j["modal_rank"] = rep.modal_rank;
  return j;
}

json to_json(const PhasePoint& pt) {
  json j;
  j["chart"] = chart_name(pt.chart);
  j["q"] = std::vector<double>(pt.q.data(), pt.q.data() + pt.q.size());
  j["p"] = std::vector<double>(pt.p.data(), pt.p.data() + pt.p.size());
  return j;
}

PhasePoint phase_point_from_json(const json& j) {
  PhasePoint pt;
  const auto chart = j.at("chart").get<std::string>();
  if (chart == "poincare")
    pt.chart = Chart::Poincare;
  else if (chart == "beltrami")
    pt.chart = Chart::Beltrami;
  else
    throw DomainError("unknown chart '" + chart + "'");
  const auto q = j.at("q").get<std::vector<double>>();
  const auto p = j.at("p").get<std::vector<double>>();
  if (q.size() != p.size()) throw DomainError("q and p must have equal length");
  pt.q = Eigen::Map<const Eigen::VectorXd>(q.data(), q.size());
  pt.p = Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
  return pt;
}

json trajectory_to_json(const Trajectory& traj, const std::vector<DriftEntry>& drift) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["times"] = traj.times;
  json states = json::array();
  for (const auto& s : traj.states) states.push_back(to_json(s));
  j["states"] = states;
  j["observables"] = traj.observable_names;
  j["logs"] = traj.logs;
  json d = json::array();
  for (const auto& e : drift)
    d.push_back({{"observable", e.observable},
                 {"initial", e.initial},
                 {"max_drift", e.max_drift},
                 {"final_drift", e.final_drift}});
  j["drift"] = d;
  return j;
}

void trajectory_to_csv(const Trajectory& traj, std::ostream& os) {
  const int n = traj.states.empty() ? 0 : traj.states.front().dim();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",q_" << i;
  for (int i = 1; i <= n; ++i) os << ",p_" << i;
  for (const auto& name : traj.observable_names) os << "," << name;
  os << "\n";
  os.precision(17);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << traj.times[k];
    for (int i = 0; i < n; ++i) os << "," << traj.states[k].q[i];
    for (int i = 0; i < n; ++i) os << "," << traj.states[k].p[i];
    for (double v : traj.logs[k]) os << "," << v;
    os << "\n";
  }
}

}  // namespace ckepler
