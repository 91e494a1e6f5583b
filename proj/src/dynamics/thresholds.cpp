#include <pshield/dynamics/thresholds.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pshield
{

std::optional<double> sweep_reach (const RobotGeometry &g, std::size_t beam, double direction_offset, double turn, double sweep_step)
{
    return sweep_reach_from (g, g.beam_origin_u (beam), g.beam_angles[beam] - direction_offset, turn, sweep_step);
}

std::optional<double> sweep_reach_from (const RobotGeometry &g, double origin_u, double theta, double turn, double sweep_step)
{
    const Pose rest{};
    const Vec2 origin{origin_u, 0.0};
    const double ang = std::numbers::pi / 2.0 - theta;
    const Vec2 dir{std::cos (ang), std::sin (ang)};

    const double base = ray_exit_convex (g.footprint (rest), origin, dir).value_or (0.0);
    const int n = std::max (1, static_cast<int> (std::ceil (std::fabs (turn) / sweep_step)));
    double reach = base;
    Polygon prev = g.footprint (rest);
    for (int k = 1; k <= n; ++k)
    {
        Polygon cur = g.footprint (rotate_pose (rest, turn * k / n));
        std::vector<Vec2> pts = prev;
        pts.insert (pts.end (), cur.begin (), cur.end ());
        if (auto t = ray_exit_convex (convex_hull (pts), origin, dir))
            reach = std::max (reach, *t);
        prev = std::move (cur);
    }
    if (reach <= base + 1e-12)
        return std::nullopt;
    return reach;
}

GapSpan gap_span (const RobotGeometry &g, std::size_t i)
{
    const std::size_t j = (i + 1) % g.beam_count ();
    if (g.gap_shares_origin (i))
        return {g.beam_origin_u (i), g.beam_angles[i], g.beam_angles[i] + g.gap_width (i)};

    // seen from the centre, a hit outside the body lies between the beam angle and the angle of its exit point
    const Polygon body = g.footprint ({});
    GapSpan span{0.0, g.beam_angles[i], g.beam_angles[i] + g.gap_width (i)};
    for (std::size_t b : {i, j})
    {
        const Vec2 o{g.beam_origin_u (b), 0.0};
        const double ang = std::numbers::pi / 2.0 - g.beam_angles[b];
        const Vec2 d{std::cos (ang), std::sin (ang)};
        const Vec2 e = o + d * ray_exit_convex (body, o, d).value_or (0.0);
        double phi = std::atan2 (e.x, e.y);
        while (phi < span.lo - std::numbers::pi)
            phi += 2.0 * std::numbers::pi;
        while (phi > span.lo + std::numbers::pi)
            phi -= 2.0 * std::numbers::pi;
        span.lo = std::min (span.lo, phi);
        span.hi = std::max (span.hi, phi);
    }
    return span;
}

TurnThresholds precompute_turn_thresholds (const RobotGeometry &g, const ThresholdConfig &cfg)
{
    g.validate ();
    if (!(cfg.sweep_step > 0.0) || cfg.margin < 0.0 || cfg.gap_margin < 0.0)
        throw std::invalid_argument ("threshold sweep step must be positive and margin non-negative");

    const std::size_t n = g.beam_count ();
    const double spread = cfg.spread >= 0.0 ? cfg.spread : std::numbers::pi / static_cast<double> (n);
    const int samples = std::max (0, static_cast<int> (std::ceil (spread / cfg.sweep_step)));

    TurnThresholds th;
    th.right.assign (n, 0.0);
    th.left.assign (n, 0.0);
    th.gap_right.assign (n, 0.0);
    th.gap_left.assign (n, 0.0);
    th.gap_samples = cfg.gap_samples;
    if (g.max_rotation == 0.0)
        return th;

    for (std::size_t i = 0; i < n; ++i)
    {
        for (int s = -samples; s <= samples; ++s)
        {
            const double off = samples > 0 ? spread * s / samples : 0.0;
            if (auto t = sweep_reach (g, i, off, g.max_rotation, cfg.sweep_step))
                th.right[i] = std::max (th.right[i], *t + cfg.margin);
            if (auto t = sweep_reach (g, i, off, -g.max_rotation, cfg.sweep_step))
                th.left[i] = std::max (th.left[i], *t + cfg.margin);
        }
        const GapSpan span = gap_span (g, i);
        const int k = std::max<int> (static_cast<int> (cfg.gap_samples), static_cast<int> (std::ceil ((span.hi - span.lo) / cfg.sweep_step)));
        for (int s = 0; s <= k + 1; ++s)
        {
            const double phi = span.lo + (span.hi - span.lo) * s / (k + 1);
            if (auto t = sweep_reach_from (g, span.origin_u, phi, g.max_rotation, cfg.sweep_step))
                th.gap_right[i] = std::max (th.gap_right[i], *t + cfg.gap_margin);
            if (auto t = sweep_reach_from (g, span.origin_u, phi, -g.max_rotation, cfg.sweep_step))
                th.gap_left[i] = std::max (th.gap_left[i], *t + cfg.gap_margin);
        }
    }
    return th;
}

} // namespace pshield
