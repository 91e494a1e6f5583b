#pragma once

#include <pshield/dynamics/geometry.hpp>

#include <vector>

namespace pshield
{

struct Observation
{
    std::vector<double> lidar;
    Pose pose;
    Vec2 target;
    double target_heading = 0.0; ///< bearing of the target relative to the robot heading
    double target_distance = 0.0;

    /// Fills the polar target fields from pose and target.
    void update_polar ();

    /// Flat feature vector: lidar, x, y, target x, target y, heading, bearing, distance.
    /// Every entry is scaled into [0, 1] using the arena box and lidar range.
    std::vector<double> to_vector (const RobotGeometry &g, double arena_size = 1.0) const;
};

} // namespace pshield
