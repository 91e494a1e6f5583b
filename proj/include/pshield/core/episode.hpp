#pragma once

#include <pshield/core/shield.hpp>
#include <pshield/envs/nav_env.hpp>
#include <pshield/envs/policies.hpp>

#include <json.hpp>

#include <iosfwd>
#include <vector>

namespace pshield
{

struct StepRecord
{
    int step = 0;
    Pose pose; ///< pose the action was taken from
    StepOutcome outcome;
};

struct EpisodeRecord
{
    std::uint64_t seed = 0;
    int index = 0;
    Outcome outcome = Outcome::Timeout;
    int steps = 0;
    double reward = 0.0;
    int unsat = 0;
    int interventions = 0;
    double latency_ms = 0.0; ///< total shield time, excluded from the JSON record
    Pose final_pose;
    std::vector<StepRecord> trace;
};

/// Runs one episode on a world generated from seed, shielded by shield (nullptr = no shield).
EpisodeRecord run_episode (Policy &policy, NavEnv &env, const Shield *shield, int horizon, std::uint64_t seed);
/// Same on a fixed world.
EpisodeRecord run_episode (Policy &policy, NavEnv &env, const Shield *shield, int horizon, const ObstacleWorld &world, std::uint64_t seed);

/// Fixed-precision record without timing data, so equal runs give equal bytes.
nlohmann::json to_json (const EpisodeRecord &r);
EpisodeRecord episode_from_json (const nlohmann::json &j);
void write_trajectory_csv (std::ostream &out, const EpisodeRecord &r);

} // namespace pshield
