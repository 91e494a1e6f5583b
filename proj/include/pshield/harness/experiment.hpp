#pragma once
/**
 * @file
 * @brief Batch runner over seeds and episodes, with aggregate metrics.
 */

#include <pshield/core/episode.hpp>
#include <pshield/harness/config.hpp>

#include <json.hpp>

#include <optional>
#include <vector>

namespace pshield
{

struct SeedMetrics
{
    std::uint64_t seed = 0;
    int episodes = 0;
    int successes = 0;
    int collisions = 0; ///< separation violations in the particle world
    int timeouts = 0;
    int unsat_episodes = 0; ///< episodes with at least one unsat step
    long unsat_steps = 0;
    long interventions = 0;
    long steps = 0;
    double latency_ms = 0.0;

    std::optional<double> success_rate () const;
    std::optional<double> collision_rate () const;
    std::optional<double> timeout_rate () const;
};

struct MetricsReport
{
    std::vector<SeedMetrics> seeds;
    /// Mean and population std over seeds; empty when no seed ran an episode.
    std::optional<double> success_mean, success_std;
    std::optional<double> collision_mean, collision_std;
    std::optional<double> timeout_mean;
    int unsat_total = 0; ///< episodes with at least one unsat step
    std::optional<double> intervention_rate; ///< per step
    std::optional<double> mean_steps;
    std::optional<double> mean_latency_ms; ///< per shielded step
};

MetricsReport aggregate (std::vector<SeedMetrics> seeds);

/// Runs every seed x episode cell in parallel. Episode e of seed s uses derive_seed (s, e).
/// Writes report.json and episodes.jsonl (plus trajectories/) when output_dir is set.
MetricsReport run_experiment (const ExperimentConfig &cfg);
/// Same, also handing back the nav episode records sorted by seed and index.
MetricsReport run_experiment (const ExperimentConfig &cfg, std::vector<EpisodeRecord> *records);

nlohmann::json to_json (const MetricsReport &r);

} // namespace pshield
