#include <pshield/dynamics/pose.hpp>

namespace pshield
{

double wrap_angle (double a)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod (a + std::numbers::pi, two_pi);
    if (w < 0.0)
        w += two_pi;
    w -= std::numbers::pi;
    if (w >= std::numbers::pi)
        w -= two_pi;
    return w;
}

Pose rotate_pose (const Pose &p, double a1) { return {p.x, p.y, wrap_angle (p.r - a1)}; }

Pose step_pose (const Pose &p, const Action &a)
{
    Pose out = rotate_pose (p, a.a1);
    out.x += a.a0 * std::cos (out.r);
    out.y += a.a0 * std::sin (out.r);
    return out;
}

} // namespace pshield
