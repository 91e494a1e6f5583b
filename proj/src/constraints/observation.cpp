#include <pshield/constraints/observation.hpp>

#include <algorithm>

namespace pshield
{

void Observation::update_polar ()
{
    const Vec2 d = target - Vec2{pose.x, pose.y};
    target_distance = norm (d);
    target_heading = wrap_angle (std::atan2 (d.y, d.x) - pose.r);
}

std::vector<double> Observation::to_vector (const RobotGeometry &g, double arena_size) const
{
    constexpr double pi = std::numbers::pi;
    std::vector<double> out;
    out.reserve (lidar.size () + 7);
    for (double l : lidar)
        out.push_back (std::clamp (l / g.lidar_range, 0.0, 1.0));
    out.push_back (pose.x / arena_size);
    out.push_back (pose.y / arena_size);
    out.push_back (target.x / arena_size);
    out.push_back (target.y / arena_size);
    out.push_back ((pose.r + pi) / (2.0 * pi));
    out.push_back ((target_heading + pi) / (2.0 * pi));
    out.push_back (std::clamp (target_distance / (arena_size * std::numbers::sqrt2), 0.0, 1.0));
    return out;
}

} // namespace pshield
