#pragma once

#include <pshield/constraints/observation.hpp>
#include <pshield/dynamics/world.hpp>
#include <pshield/envs/rng.hpp>

#include <string>

namespace pshield
{

enum class Outcome
{
    Running,
    Success,
    Collision,
    Timeout,
};

std::string to_string (Outcome o);

struct WorldGenConfig
{
    int min_obstacles = 5; ///< target count; fewer are placed when the gap rule leaves no room
    int max_obstacles = 7;
    double circle_min = 0.05, circle_max = 0.1; ///< radius
    double rect_min = 0.1, rect_max = 0.2;      ///< side length
    double min_gap = 0.25;                       ///< clearance between obstacles and to the walls
    double obstacle_xmin = 0.3, obstacle_xmax = 0.7;
    double start_xmin = 0.08, start_xmax = 0.2;
    double target_xmin = 0.8, target_xmax = 0.92;
    double spawn_clearance = 0.08; ///< free distance around start and target
};

struct NavConfig
{
    RobotGeometry geometry;
    WorldGenConfig world;
    int horizon = 300;
    double success_radius = 0.05;
    double reward_target = 1.0;
    double reward_collision = -1.0;
    double reward_step = -0.01;
};

/// Samples a world with obstacles, start and target; deterministic in the seed.
ObstacleWorld generate_world (const WorldGenConfig &cfg, const RobotGeometry &g, std::uint64_t seed);

struct StepResult
{
    Observation observation;
    double reward = 0.0;
    bool terminated = false;
    Outcome outcome = Outcome::Running;
};

class NavEnv
{
public:
    explicit NavEnv (NavConfig cfg = {});

    const NavConfig &config () const { return cfg_; }
    const ObstacleWorld &world () const { return world_; }
    const Pose &pose () const { return pose_; }
    int steps () const { return steps_; }
    bool done () const { return outcome_ != Outcome::Running; }
    Outcome outcome () const { return outcome_; }

    /// Generates a fresh world from the seed.
    Observation reset (std::uint64_t seed);
    /// Uses the given world as is (start pose and target from the world).
    Observation reset (const ObstacleWorld &world);
    /// Throws std::logic_error once the episode has ended.
    StepResult step (const Action &a);

    Observation observe () const;

private:
    NavConfig cfg_;
    ObstacleWorld world_;
    Pose pose_;
    int steps_ = 0;
    Outcome outcome_ = Outcome::Timeout;
};

} // namespace pshield
