#include <pshield/dynamics/world.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pshield
{
namespace
{

constexpr double inf = std::numeric_limits<double>::infinity ();

double ray_circle (const Circle &c, Vec2 o, Vec2 d)
{
    const Vec2 m = o - c.c;
    const double b = dot (m, d);
    const double cc = dot (m, m) - c.radius * c.radius;
    if (cc <= 0.0)
        return 0.0;
    const double disc = b * b - cc;
    if (disc < 0.0 || b > 0.0)
        return inf;
    return -b - std::sqrt (disc);
}

double ray_rect (const Rect &r, Vec2 o, Vec2 d)
{
    double t0 = 0.0, t1 = inf;
    const double lo[2] = {r.x, r.y};
    const double hi[2] = {r.x + r.w, r.y + r.h};
    const double oo[2] = {o.x, o.y};
    const double dd[2] = {d.x, d.y};
    for (int k = 0; k < 2; ++k)
    {
        if (dd[k] == 0.0)
        {
            if (oo[k] < lo[k] || oo[k] > hi[k])
                return inf;
            continue;
        }
        double a = (lo[k] - oo[k]) / dd[k];
        double b = (hi[k] - oo[k]) / dd[k];
        if (a > b)
            std::swap (a, b);
        t0 = std::max (t0, a);
        t1 = std::min (t1, b);
        if (t0 > t1)
            return inf;
    }
    return t0;
}

double ray_arena (const ObstacleWorld &w, Vec2 o, Vec2 d)
{
    double t = inf;
    if (d.x > 0.0)
        t = std::min (t, (w.xmax - o.x) / d.x);
    if (d.x < 0.0)
        t = std::min (t, (w.xmin - o.x) / d.x);
    if (d.y > 0.0)
        t = std::min (t, (w.ymax - o.y) / d.y);
    if (d.y < 0.0)
        t = std::min (t, (w.ymin - o.y) / d.y);
    return std::max (t, 0.0);
}

double segment_distance (Vec2 p, Vec2 a, Vec2 b)
{
    const Vec2 ab = b - a;
    const double len2 = dot (ab, ab);
    const double t = len2 > 0.0 ? std::clamp (dot (p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return norm (p - (a + ab * t));
}

bool polygon_circle (const Polygon &poly, const Circle &c)
{
    if (point_in_convex (poly, c.c))
        return true;
    for (std::size_t i = 0; i < poly.size (); ++i)
        if (segment_distance (c.c, poly[i], poly[(i + 1) % poly.size ()]) <= c.radius)
            return true;
    return false;
}

} // namespace

double raycast (const ObstacleWorld &w, Vec2 origin, Vec2 dir, double max_range)
{
    double t = ray_arena (w, origin, dir);
    for (const auto &ob : w.obstacles)
    {
        if (const auto *c = std::get_if<Circle> (&ob))
            t = std::min (t, ray_circle (*c, origin, dir));
        else
            t = std::min (t, ray_rect (std::get<Rect> (ob), origin, dir));
    }
    return std::clamp (t, 0.0, max_range);
}

std::vector<double> raycast_lidar (const Pose &p, const ObstacleWorld &w, const RobotGeometry &g)
{
    std::vector<double> out (g.beam_count ());
    for (std::size_t i = 0; i < out.size (); ++i)
        out[i] = raycast (w, g.beam_origin (p, i), g.beam_direction (p, i), g.lidar_range);
    return out;
}

bool polygon_collides (const Polygon &poly, const ObstacleWorld &w)
{
    for (Vec2 v : poly)
        if (!w.inside_arena (v))
            return true;
    for (const auto &ob : w.obstacles)
    {
        if (const auto *c = std::get_if<Circle> (&ob))
        {
            if (polygon_circle (poly, *c))
                return true;
        }
        else if (convex_overlap (poly, std::get<Rect> (ob).polygon ()))
            return true;
    }
    return false;
}

bool footprint_collides (const Pose &p, const RobotGeometry &g, const ObstacleWorld &w) { return polygon_collides (g.footprint (p), w); }

bool step_collides (const Pose &p, const Action &a, const RobotGeometry &g, const ObstacleWorld &w)
{
    constexpr double max_substep = 0.25 * std::numbers::pi / 180.0;
    const int n = std::max (1, static_cast<int> (std::ceil (std::fabs (a.a1) / max_substep)));
    Polygon prev = g.footprint (p);
    if (polygon_collides (prev, w))
        return true;
    for (int k = 1; k <= n; ++k)
    {
        Polygon cur = g.footprint (rotate_pose (p, a.a1 * k / n));
        std::vector<Vec2> pts = prev;
        pts.insert (pts.end (), cur.begin (), cur.end ());
        if (polygon_collides (convex_hull (pts), w))
            return true;
        prev = std::move (cur);
    }
    const Polygon end = g.footprint (step_pose (p, a));
    std::vector<Vec2> pts = prev;
    pts.insert (pts.end (), end.begin (), end.end ());
    return polygon_collides (convex_hull (pts), w);
}

ObstacleWorld parse_world (std::istream &in)
{
    ObstacleWorld w;
    std::string line;
    int lineno = 0;
    bool header = false;
    auto fail = [&] (const std::string &msg) { throw std::runtime_error ("world line " + std::to_string (lineno) + ": " + msg); };
    while (std::getline (in, line))
    {
        ++lineno;
        if (auto hash = line.find ('#'); hash != std::string::npos)
            line.erase (hash);
        std::istringstream ss (line);
        std::string key;
        if (!(ss >> key))
            continue;
        if (!header)
        {
            int version = 0;
            if (key != "pshield-world" || !(ss >> version) || version != 1)
                fail ("expected header 'pshield-world 1'");
            header = true;
            continue;
        }
        if (key == "arena")
        {
            if (!(ss >> w.xmin >> w.ymin >> w.xmax >> w.ymax) || w.xmin >= w.xmax || w.ymin >= w.ymax)
                fail ("bad arena");
        }
        else if (key == "rect")
        {
            Rect r;
            if (!(ss >> r.x >> r.y >> r.w >> r.h) || r.w <= 0 || r.h <= 0)
                fail ("bad rect");
            w.obstacles.emplace_back (r);
        }
        else if (key == "circle")
        {
            Circle c;
            if (!(ss >> c.c.x >> c.c.y >> c.radius) || c.radius <= 0)
                fail ("bad circle");
            w.obstacles.emplace_back (c);
        }
        else if (key == "start")
        {
            if (!(ss >> w.start.x >> w.start.y >> w.start.r))
                fail ("bad start");
            w.start.r = wrap_angle (w.start.r);
        }
        else if (key == "target")
        {
            if (!(ss >> w.target.x >> w.target.y))
                fail ("bad target");
        }
        else
            fail ("unknown entry '" + key + "'");
    }
    if (!header)
        throw std::runtime_error ("world file is empty");
    return w;
}

ObstacleWorld load_world (const std::string &path)
{
    std::ifstream in (path);
    if (!in)
        throw std::runtime_error ("cannot open world file " + path);
    return parse_world (in);
}

void write_world (std::ostream &out, const ObstacleWorld &w)
{
    out.precision (17);
    out << "pshield-world 1\n";
    out << "arena " << w.xmin << ' ' << w.ymin << ' ' << w.xmax << ' ' << w.ymax << '\n';
    for (const auto &ob : w.obstacles)
    {
        if (const auto *c = std::get_if<Circle> (&ob))
            out << "circle " << c->c.x << ' ' << c->c.y << ' ' << c->radius << '\n';
        else
        {
            const Rect &r = std::get<Rect> (ob);
            out << "rect " << r.x << ' ' << r.y << ' ' << r.w << ' ' << r.h << '\n';
        }
    }
    out << "start " << w.start.x << ' ' << w.start.y << ' ' << w.start.r << '\n';
    out << "target " << w.target.x << ' ' << w.target.y << '\n';
}

} // namespace pshield
