#pragma once

#include <pshield/dynamics/geometry.hpp>
#include <pshield/envs/nav_env.hpp>
#include <pshield/solver/action_solver.hpp>

#include <array>

namespace pshield
{

constexpr std::size_t particle_agents = 4;

struct ParticleConfig
{
    double d_min = 0.1;
    double v_max = 0.02;        ///< per-axis speed limit per step
    double layout_radius = 0.35;
    double jitter = 0.02;       ///< random offset of the start layout
    double success_radius = 0.05;
    int horizon = 200;
    double safety = 1e-6;

    /// Requires sqrt(2) * v_max < d_min / 2 so one step can never cross the separation.
    void validate () const;
};

using Velocities = std::array<Vec2, particle_agents>;

struct ParticleStep
{
    bool violation = false;
    bool success = false;
    double min_distance = 0.0;
};

class ParticleEnv
{
public:
    explicit ParticleEnv (ParticleConfig cfg = {});

    const ParticleConfig &config () const { return cfg_; }
    const std::array<Vec2, particle_agents> &positions () const { return pos_; }
    const std::array<Vec2, particle_agents> &targets () const { return target_; }

    /// Agents on a circle around the arena centre, each heading for the antipodal point.
    void reset (std::uint64_t seed, bool jitter = true);
    void reset (const std::array<Vec2, particle_agents> &pos, const std::array<Vec2, particle_agents> &target);
    /// Throws std::invalid_argument for commands outside the per-axis limit.
    ParticleStep step (const Velocities &v);
    double min_distance () const;
    bool all_arrived () const;

private:
    ParticleConfig cfg_;
    std::array<Vec2, particle_agents> pos_{};
    std::array<Vec2, particle_agents> target_{};
};

/// Straight-to-target velocity with a slight right-hand bias and optional noise.
Velocities particle_policy (const ParticleEnv &env, Rng *noise = nullptr, double noise_std = 0.002);

/// Separation constraints for agent i, solver axes (a0, a1) = (vy, vx). Agents before i
/// in index order are fixed at their decided velocities; later agents are given half
/// of the remaining slack each.
ConstraintSet separation_constraints (const ParticleEnv &env, std::size_t i, const Velocities &decided);

struct ParticleShieldResult
{
    Velocities executed{};
    int interventions = 0;
    int unsat = 0;
};

ParticleShieldResult shield_particles (const ParticleEnv &env, const Velocities &proposal, const SolverConfig &cfg = {});

struct ParticleEpisode
{
    bool violation = false;
    bool success = false;
    int steps = 0;
    double min_distance = 0.0;
    int interventions = 0;
    int unsat = 0;
};

ParticleEpisode run_particle_episode (const ParticleConfig &cfg, std::uint64_t seed, bool shielded, bool jitter = true);

} // namespace pshield
