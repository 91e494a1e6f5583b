#pragma once
/**
 * @file
 * @brief Experiment configuration and its JSON file format.
 *
 * A config file is a JSON object with the optional sections "geometry",
 * "thresholds", "solver", "shield", "environment" and "experiment". Missing
 * keys keep their defaults; unknown keys are rejected.
 */

#include <pshield/core/shield.hpp>
#include <pshield/envs/nav_env.hpp>
#include <pshield/envs/particle_env.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace pshield
{

struct ExperimentConfig
{
    std::string environment = "nav"; ///< "nav" or "particle"
    std::string policy = "expert";
    bool shielded = true;
    ShieldConfig shield;
    ThresholdConfig thresholds;
    NavConfig nav;
    ParticleConfig particle;
    std::string world_file; ///< fixed nav world instead of generated ones
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    int episodes = 100; ///< per seed
    std::string output_dir;
    bool trajectories = false; ///< also write one CSV per episode
    unsigned threads = 0;      ///< 0 picks the hardware concurrency

    /// Throws std::invalid_argument on anything unusable.
    void validate () const;
};

/// Sets the shield flags for a named regime: none, collision, loop, optimizer.
void apply_regime (ExperimentConfig &cfg, const std::string &regime);
std::string regime_name (const ExperimentConfig &cfg);

ExperimentConfig config_from_json (const nlohmann::json &j, ExperimentConfig base = {});
ExperimentConfig load_config (const std::string &path);
nlohmann::json to_json (const ExperimentConfig &cfg);

} // namespace pshield
