#include <pshield/dynamics/geometry.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pshield
{

Polygon convex_hull (std::vector<Vec2> pts)
{
    std::sort (pts.begin (), pts.end (), [] (Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase (std::unique (pts.begin (), pts.end ()), pts.end ());
    if (pts.size () < 3)
        return pts;
    Polygon hull (2 * pts.size ());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size (); ++i)
    {
        while (k >= 2 && cross (hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size () - 1, t = k + 1; i > 0; --i)
    {
        while (k >= t && cross (hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0)
            --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize (k - 1);
    return hull;
}

bool point_in_convex (const Polygon &poly, Vec2 p)
{
    for (std::size_t i = 0; i < poly.size (); ++i)
        if (cross (poly[(i + 1) % poly.size ()] - poly[i], p - poly[i]) < 0)
            return false;
    return true;
}

std::optional<double> ray_exit_convex (const Polygon &poly, Vec2 origin, Vec2 dir)
{
    // Cyrus-Beck clipping of the half-line against the polygon's edges.
    double t_in = 0.0;
    double t_out = std::numeric_limits<double>::infinity ();
    for (std::size_t i = 0; i < poly.size (); ++i)
    {
        const Vec2 a = poly[i];
        const Vec2 e = poly[(i + 1) % poly.size ()] - a;
        const double num = cross (e, origin - a); // >= 0 inside
        const double den = cross (e, dir);
        if (den == 0.0)
        {
            if (num < 0.0)
                return std::nullopt;
            continue;
        }
        const double t = -num / den;
        if (den < 0.0)
            t_out = std::min (t_out, t);
        else
            t_in = std::max (t_in, t);
    }
    if (t_in > t_out)
        return std::nullopt;
    return t_out;
}

bool segments_intersect (Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
    const double d1 = cross (b - a, c - a);
    const double d2 = cross (b - a, d - a);
    const double d3 = cross (d - c, a - c);
    const double d4 = cross (d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_seg = [] (Vec2 p, Vec2 q, Vec2 r) {
        return std::min (p.x, q.x) <= r.x && r.x <= std::max (p.x, q.x) && std::min (p.y, q.y) <= r.y && r.y <= std::max (p.y, q.y);
    };
    return (d1 == 0 && on_seg (a, b, c)) || (d2 == 0 && on_seg (a, b, d)) || (d3 == 0 && on_seg (c, d, a)) || (d4 == 0 && on_seg (c, d, b));
}

bool convex_overlap (const Polygon &a, const Polygon &b)
{
    // separating axis test over both edge sets
    auto separated = [] (const Polygon &p, const Polygon &q) {
        for (std::size_t i = 0; i < p.size (); ++i)
        {
            const Vec2 e = p[(i + 1) % p.size ()] - p[i];
            const Vec2 n{e.y, -e.x};
            double pmax = -std::numeric_limits<double>::infinity ();
            double qmin = std::numeric_limits<double>::infinity ();
            for (Vec2 v : p)
                pmax = std::max (pmax, dot (n, v));
            for (Vec2 v : q)
                qmin = std::min (qmin, dot (n, v));
            if (qmin > pmax)
                return true;
        }
        return false;
    };
    return !separated (a, b) && !separated (b, a);
}

std::vector<double> RobotGeometry::default_beams (std::size_t n)
{
    std::vector<double> out (n);
    const double step = 2.0 * std::numbers::pi / static_cast<double> (n);
    const double mid = static_cast<double> (n - 1) / 2.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::numbers::pi / 2.0 + (static_cast<double> (i) - mid) * step;
    return out;
}

void RobotGeometry::validate () const
{
    if (!(width > 0.0))
        throw std::invalid_argument ("robot width must be positive");
    if (!(length > 0.0))
        throw std::invalid_argument ("robot length must be positive");
    if (front_offset < 0.0 || front_offset >= length || back_offset < 0.0 || back_offset >= length)
        throw std::invalid_argument ("lidar offsets must lie in [0, length)");
    if (!(max_translation > 0.0) || !(max_rotation >= 0.0) || !(lidar_range > 0.0))
        throw std::invalid_argument ("step limits and lidar range must be positive");
    if (beam_angles.empty ())
        throw std::invalid_argument ("at least one lidar beam is required");
    for (std::size_t i = 1; i < beam_angles.size (); ++i)
        if (!(beam_angles[i] > beam_angles[i - 1]))
            throw std::invalid_argument ("beam angles must be strictly increasing");
}

bool RobotGeometry::is_front_beam (std::size_t i) const
{
    double t = std::fmod (beam_angles[i], 2.0 * std::numbers::pi);
    if (t < 0.0)
        t += 2.0 * std::numbers::pi;
    return t > 1e-12 && t < std::numbers::pi - 1e-12;
}

double RobotGeometry::beam_origin_u (std::size_t i) const
{
    return is_front_beam (i) ? length / 2.0 - front_offset : -(length / 2.0 - back_offset);
}

Vec2 RobotGeometry::beam_origin (const Pose &p, std::size_t i) const
{
    const double u = beam_origin_u (i);
    return {p.x + u * std::cos (p.r), p.y + u * std::sin (p.r)};
}

Vec2 RobotGeometry::beam_direction (const Pose &p, std::size_t i) const
{
    const double ang = p.r + std::numbers::pi / 2.0 - beam_angles[i];
    return {std::cos (ang), std::sin (ang)};
}

bool RobotGeometry::gap_shares_origin (std::size_t i) const { return is_front_beam (i) == is_front_beam ((i + 1) % beam_count ()); }

double RobotGeometry::gap_width (std::size_t i) const
{
    const std::size_t j = (i + 1) % beam_count ();
    double next = beam_angles[j];
    while (next <= beam_angles[i])
        next += 2.0 * std::numbers::pi;
    return next - beam_angles[i];
}

Polygon RobotGeometry::footprint (const Pose &p) const
{
    const double hl = length / 2.0;
    const double hw = width / 2.0;
    const Vec2 c{p.x, p.y};
    return {c + rotate ({-hl, -hw}, p.r), c + rotate ({hl, -hw}, p.r), c + rotate ({hl, hw}, p.r), c + rotate ({-hl, hw}, p.r)};
}

} // namespace pshield
