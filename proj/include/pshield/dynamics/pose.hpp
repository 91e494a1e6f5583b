#pragma once

#include <cmath>
#include <numbers>

namespace pshield
{

/// Wraps an angle into [-pi, pi).
double wrap_angle (double a);

struct Pose
{
    double x = 0.0;
    double y = 0.0;
    double r = 0.0; ///< heading, radians, wrapped
};

struct Action
{
    double a0 = 0.0; ///< translation per step
    double a1 = 0.0; ///< rotation per step, positive turns right (heading decreases)

    bool operator== (const Action &) const = default;
};

/// Rotate by -a1 first, then translate by a0 along the new heading.
Pose step_pose (const Pose &p, const Action &a);

/// Pose after rotating by a fraction of the turn without translating.
Pose rotate_pose (const Pose &p, double a1);

} // namespace pshield
