#include <pshield/constraints/instantiate.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pshield
{

double gap_radius (double l0, double l1, double gap)
{
    const double c = std::cos (gap);
    const double sum = l0 * l0 + l1 * l1;
    const double mid = std::sqrt (std::max (0.0, sum + 2.0 * l0 * l1 * c)) / 2.0;
    const double rad = std::sqrt (std::max (0.0, sum - 2.0 * l0 * l1 * c)) / 2.0;
    return std::max (0.0, mid - rad);
}

namespace
{

/// Half-plane of the line through a and b that does not contain the ray origin o.
struct FarSide
{
    Vec2 a, normal;
    bool contains (Vec2 p) const { return dot (p - a, normal) >= -1e-12; }
};

FarSide far_side (Vec2 a, Vec2 b, Vec2 o)
{
    Vec2 nrm{-(b - a).y, (b - a).x};
    if (dot (o - a, nrm) > 0.0)
        nrm = nrm * -1.0;
    return {a, nrm};
}

std::optional<Vec2> line_cross (const FarSide &p, const FarSide &q)
{
    const Vec2 d1{-p.normal.y, p.normal.x}, d2{-q.normal.y, q.normal.x};
    const double den = cross (d1, d2);
    if (std::fabs (den) < 1e-15)
        return std::nullopt;
    return p.a + d1 * (cross (q.a - p.a, d2) / den);
}

/// Closest distance from o to the part of the disc over [hi, hj] lying on the far side of both lines.
double hidden_distance (Vec2 o, Vec2 hi, Vec2 hj, const FarSide &s1, const FarSide &s2)
{
    const Vec2 m = (hi + hj) * 0.5;
    const double rho = norm (hj - hi) / 2.0;
    auto inside = [&] (Vec2 p) { return norm (p - m) <= rho + 1e-12 && s1.contains (p) && s2.contains (p); };

    std::vector<Vec2> cand{hi, hj};
    const Vec2 c = hj - hi;
    const double t = std::clamp (dot (o - hi, c) / std::max (dot (c, c), 1e-30), 0.0, 1.0);
    cand.push_back (hi + c * t);
    if (const double d = norm (o - m); d > rho)
        cand.push_back (m + (o - m) * ((d - rho) / d));
    for (const FarSide *s : {&s1, &s2})
    {
        const Vec2 dir{-s->normal.y, s->normal.x};
        const double dd = dot (dir, dir);
        cand.push_back (s->a + dir * (dot (o - s->a, dir) / dd));
        // line-circle intersections
        const Vec2 f = s->a - m;
        const double b = dot (f, dir), cc = dot (f, f) - rho * rho;
        const double disc = b * b - dd * cc;
        if (disc >= 0.0)
            for (double sg : {-1.0, 1.0})
                cand.push_back (s->a + dir * ((-b + sg * std::sqrt (disc)) / dd));
    }
    if (auto x = line_cross (s1, s2))
        cand.push_back (*x);

    double best = std::min (norm (hi - o), norm (hj - o));
    for (const Vec2 &p : cand)
        if (inside (p))
            best = std::min (best, norm (p - o));
    // the chord itself belongs to the obstacle
    best = std::min (best, norm (hi + c * t - o));
    return best;
}

double segment_distance (Vec2 o, Vec2 a, Vec2 b)
{
    const Vec2 c = b - a;
    const double t = std::clamp (dot (o - a, c) / std::max (dot (c, c), 1e-30), 0.0, 1.0);
    return norm (a + c * t - o);
}

double ray_distance (Vec2 o, Vec2 a, Vec2 dir)
{
    const double t = std::max (0.0, dot (o - a, dir) / dot (dir, dir));
    return norm (a + dir * t - o);
}

/// Closest distance from o to any right-angled or rounder corner of a convex obstacle
/// that contains the hit p while the missing ray (origin q, direction e) stays free up to range.
/// Such a corner sees p and some point of the ray beyond range at a right angle or more.
double miss_distance (Vec2 o, Vec2 p, Vec2 q, Vec2 e, double range)
{
    const Vec2 c = q + e * range;
    const Vec2 m = (p + c) * 0.5;
    double best = std::max (0.0, norm (o - m) - norm (c - p) / 2.0);
    // limit of those discs as the point recedes
    best = std::min (best, std::max (0.0, dot (p - o, e)));
    // segments from p to the ray beyond c
    const Vec2 u = c - p;
    const double den = cross (u, e);
    if (std::fabs (den) > 1e-15)
    {
        const double a = cross (o - p, e) / den, b = cross (u, o - p) / den;
        if (a >= 0.0 && a <= 1.0 && b >= 0.0)
            return 0.0;
    }
    best = std::min ({best, segment_distance (o, p, c), ray_distance (o, c, e), ray_distance (o, p, e)});
    return best;
}

} // namespace

std::vector<std::optional<GapReading>> gap_readings (const std::vector<double> &lidar, const RobotGeometry &g, double same_obstacle)
{
    const std::size_t n = lidar.size ();
    const Pose rest{};
    std::vector<std::optional<GapReading>> out (n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const std::size_t j = (i + 1) % n;
        const bool hit_i = lidar[i] < g.lidar_range, hit_j = lidar[j] < g.lidar_range;
        if (!hit_i && !hit_j)
            continue;

        GapReading gap;
        double li = lidar[i], lj = lidar[j];
        if (g.gap_shares_origin (i))
        {
            gap.origin_u = g.beam_origin_u (i);
            gap.lo = g.beam_angles[i];
            gap.hi = gap.lo + g.gap_width (i);
        }
        else
        {
            const Vec2 pi_ = g.beam_origin (rest, i) + g.beam_direction (rest, i) * lidar[i];
            const Vec2 pj = g.beam_origin (rest, j) + g.beam_direction (rest, j) * lidar[j];
            gap.lo = std::atan2 (pi_.x, pi_.y);
            gap.hi = std::atan2 (pj.x, pj.y);
            while (gap.hi < gap.lo)
                gap.hi += 2.0 * std::numbers::pi;
            while (gap.hi >= gap.lo + 2.0 * std::numbers::pi)
                gap.hi -= 2.0 * std::numbers::pi;
            li = norm (pi_);
            lj = norm (pj);
        }
        const double w = gap.hi - gap.lo;
        const std::size_t h = (i + n - 1) % n, k = (j + 1) % n;
        auto hit_point = [&] (std::size_t b) { return g.beam_origin (rest, b) + g.beam_direction (rest, b) * lidar[b]; };
        if (hit_i && hit_j && same_obstacle > 0.0 && lidar[h] < g.lidar_range && lidar[k] < g.lidar_range &&
            norm (hit_point (h) - hit_point (i)) < same_obstacle && norm (hit_point (i) - hit_point (j)) < same_obstacle &&
            norm (hit_point (j) - hit_point (k)) < same_obstacle)
        {
            // all four hits lie on one convex obstacle, which cannot bulge past the lines through the outer pairs
            const Vec2 oi = g.beam_origin (rest, i), oj = g.beam_origin (rest, j);
            gap.radius = hidden_distance ({gap.origin_u, 0.0}, hit_point (i), hit_point (j), far_side (hit_point (h), hit_point (i), oi),
                                          far_side (hit_point (j), hit_point (k), oj));
        }
        else if (hit_i && hit_j)
            gap.radius = gap_radius (li, lj, w);
        else
        {
            const std::size_t hit = hit_i ? i : j, miss = hit_i ? j : i;
            gap.radius = miss_distance ({gap.origin_u, 0.0}, hit_point (hit), g.beam_origin (rest, miss), g.beam_direction (rest, miss), g.lidar_range);
        }
        out[i] = gap;
    }
    return out;
}

namespace
{

TurnBound combine (bool no_right, bool no_left)
{
    if (no_right && no_left)
        return TurnBound::A1EqZero;
    if (no_right)
        return TurnBound::A1LeqZero;
    if (no_left)
        return TurnBound::A1GeqZero;
    return TurnBound::None;
}

} // namespace

TurnBound turn_bound (const std::vector<double> &lidar, const TurnThresholds &th)
{
    bool no_right = false, no_left = false;
    for (std::size_t i = 0; i < lidar.size (); ++i)
    {
        no_right = no_right || (th.right_relevant (i) && lidar[i] <= th.right[i]);
        no_left = no_left || (th.left_relevant (i) && lidar[i] <= th.left[i]);
    }
    return combine (no_right, no_left);
}

TurnBound turn_bound (const std::vector<double> &lidar, const TurnThresholds &th, const RobotGeometry &g, double same_obstacle)
{
    bool no_right = false, no_left = false;
    for (std::size_t i = 0; i < lidar.size (); ++i)
    {
        no_right = no_right || (th.right_relevant (i) && lidar[i] <= th.right[i]);
        no_left = no_left || (th.left_relevant (i) && lidar[i] <= th.left[i]);
    }
    const auto gaps = gap_readings (lidar, g, same_obstacle);
    for (std::size_t i = 0; i < gaps.size () && i < th.gap_right.size (); ++i)
    {
        if (!gaps[i])
            continue;
        no_right = no_right || (th.gap_right[i] > 0.0 && gaps[i]->radius <= th.gap_right[i]);
        no_left = no_left || (th.gap_left[i] > 0.0 && gaps[i]->radius <= th.gap_left[i]);
    }
    return combine (no_right, no_left);
}

ConstraintSet instantiate (const Observation &o, const ShieldHistory &h, const RobotGeometry &g, const TurnThresholds &th,
                           const QuantizationGrid &grid, const ConstraintOptions &opt)
{
    if (o.lidar.size () != g.beam_count () || th.right.size () != g.beam_count () || th.left.size () != g.beam_count ())
        throw std::invalid_argument ("observation, thresholds and geometry disagree on the beam count");

    ConstraintSet c;
    c.a0_limit = g.max_translation;
    c.a1_limit = g.max_rotation;
    c.safety = opt.safety;
    c.clearance = opt.clearance;
    c.half_length = g.length / 2.0;
    c.band = g.width / 2.0 + opt.band_margin;
    c.grid = grid;
    c.grid.a0_limit = g.max_translation;
    c.grid.a1_limit = g.max_rotation;

    if (opt.collision)
    {
        c.turn = turn_bound (o.lidar, th, g, opt.same_obstacle);
        c.beams.reserve (o.lidar.size ());
        for (std::size_t i = 0; i < o.lidar.size (); ++i)
            c.beams.push_back ({g.beam_angles[i], o.lidar[i], g.beam_origin_u (i)});
        // the disc between two neighbouring hits bounds any corner hiding in the gap
        for (const auto &gap : gap_readings (o.lidar, g, opt.same_obstacle))
        {
            if (!gap)
                continue;
            for (std::size_t s = 1; s <= opt.gap_samples; ++s)
            {
                const double phi = gap->lo + (gap->hi - gap->lo) * static_cast<double> (s) / static_cast<double> (opt.gap_samples + 1);
                c.beams.push_back ({phi, gap->radius, gap->origin_u});
            }
        }
    }
    if (opt.loop)
    {
        c.pose_cell = c.grid.pose_cell (o.pose);
        c.excluded = h.actions_at (*c.pose_cell);
    }
    return c;
}

} // namespace pshield
