#include <pshield/envs/policies.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pshield
{

void GoalSeeker::reset (std::uint64_t seed)
{
    rng_ = Rng (seed);
    distances_.clear ();
    detour_left_ = 0;
    detour_offset_ = 0.0;
}

double GoalSeeker::front_clearance (const Observation &o) const
{
    double front = g_.lidar_range;
    for (std::size_t i = 0; i < o.lidar.size (); ++i)
    {
        const double th = g_.beam_angles[i];
        const double l = o.lidar[i];
        if (std::sin (th) > 0.0 && std::fabs (std::cos (th)) * l <= g_.width / 2.0 + 0.02)
            front = std::min (front, l * std::sin (th) - (g_.length / 2.0 - g_.beam_origin_u (i)));
    }
    return front;
}

void GoalSeeker::start_detour (const Observation &o)
{
    // toward the more open side
    double left = 0.0, right = 0.0;
    for (std::size_t i = 0; i < o.lidar.size (); ++i)
        (std::cos (g_.beam_angles[i]) > 0.0 ? left : right) += o.lidar[i];
    detour_left_ = p_.detour_steps;
    detour_offset_ = (left >= right ? 1.0 : -1.0) * rng_.uniform (std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0);
    distances_.clear ();
}

Action GoalSeeker::act (const Observation &o)
{
    const double front = front_clearance (o);
    if (p_.stall_window > 0)
    {
        distances_.push_back (o.target_distance);
        const std::size_t w = static_cast<std::size_t> (p_.stall_window);
        if (detour_left_ > 0)
            --detour_left_;
        else if (front < p_.bump_distance)
            start_detour (o);
        else if (distances_.size () > w && distances_[distances_.size () - 1 - w] - distances_.back () < p_.stall_progress)
            start_detour (o);
    }
    const double e = detour_left_ > 0 ? wrap_angle (o.target_heading + detour_offset_) : o.target_heading;
    double a1 = -p_.turn_gain * e;
    double a0 = g_.max_translation * std::max (0.0, std::cos (e));

    if (p_.repulsion_gain > 0.0)
    {
        double push = 0.0;
        for (std::size_t i = 0; i < o.lidar.size (); ++i)
        {
            const double th = g_.beam_angles[i];
            const double l = o.lidar[i];
            if (std::sin (th) > 0.0 && l < p_.repulsion_range)
                push += std::sin (th) * std::cos (th) * (p_.repulsion_range - l) / p_.repulsion_range; // left obstacles push right
        }
        a1 += p_.repulsion_gain * push * g_.max_rotation * 4.0;
        if (p_.brake)
            a0 *= std::clamp ((front - p_.stop_distance) / (p_.repulsion_range - p_.stop_distance), 0.0, 1.0);
    }
    if (detour_left_ > p_.detour_steps - p_.reverse_steps)
        a0 = -0.5 * g_.max_translation;
    if (p_.noise > 0.0)
        a1 += p_.noise * rng_.normal ();
    return {std::clamp (a0, -g_.max_translation, g_.max_translation), std::clamp (a1, -g_.max_rotation, g_.max_rotation)};
}

std::unique_ptr<Policy> make_policy (const std::string &id, const RobotGeometry &g)
{
    GoalSeekerParams p;
    if (id == "expert")
        return std::make_unique<GoalSeeker> (g, p);
    if (id == "moderate")
    {
        p.repulsion_gain *= 0.5;
        return std::make_unique<GoalSeeker> (g, p);
    }
    if (id == "unsafe")
    {
        p.repulsion_gain = 0.0;
        p.brake = false;
        p.noise = 0.12;
        return std::make_unique<GoalSeeker> (g, p);
    }
    throw std::invalid_argument ("unknown policy '" + id + "'");
}

} // namespace pshield
