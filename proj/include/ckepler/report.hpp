#pragma once

#include <iosfwd>

#include <json.hpp>

#include "ckepler/dynamics.hpp"
#include "ckepler/verify.hpp"

namespace ckepler {

inline constexpr const char* kSchemaVersion = "1";

nlohmann::json to_json(const ModelParams& mp);
ModelParams model_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AlgebraReport& rep);
nlohmann::json to_json(const IndependenceReport& rep);
nlohmann::json to_json(const PhasePoint& pt);
PhasePoint phase_point_from_json(const nlohmann::json& j);

nlohmann::json trajectory_to_json(const Trajectory& traj, const std::vector<DriftEntry>& drift);

/// Fixed column order: t, q_1..q_N, p_1..p_N, then one column per logged observable.
void trajectory_to_csv(const Trajectory& traj, std::ostream& os);

}  // namespace ckepler
