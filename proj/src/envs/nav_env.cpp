#include <pshield/envs/nav_env.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pshield
{

double Rng::normal ()
{
    // Box-Muller keeps the draw sequence portable.
    const double u1 = 1.0 - uniform ();
    const double u2 = uniform ();
    return std::sqrt (-2.0 * std::log (u1)) * std::cos (2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed (std::uint64_t base, std::uint64_t index)
{
    // splitmix64 finaliser over the pair
    std::uint64_t z = base * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string to_string (Outcome o)
{
    switch (o)
    {
    case Outcome::Running: return "running";
    case Outcome::Success: return "success";
    case Outcome::Collision: return "collision";
    case Outcome::Timeout: return "timeout";
    }
    return "?";
}

namespace
{

double point_distance (const Obstacle &ob, Vec2 p)
{
    if (const auto *c = std::get_if<Circle> (&ob))
        return norm (p - c->c) - c->radius;
    const Rect &r = std::get<Rect> (ob);
    const double dx = std::max ({r.x - p.x, 0.0, p.x - (r.x + r.w)});
    const double dy = std::max ({r.y - p.y, 0.0, p.y - (r.y + r.h)});
    return std::hypot (dx, dy);
}

double shape_distance (const Obstacle &a, const Obstacle &b)
{
    if (const auto *c = std::get_if<Circle> (&a))
        return point_distance (b, c->c) - c->radius;
    if (const auto *c = std::get_if<Circle> (&b))
        return point_distance (a, c->c) - c->radius;
    const Rect &r = std::get<Rect> (a);
    const Rect &s = std::get<Rect> (b);
    const double dx = std::max ({r.x - (s.x + s.w), 0.0, s.x - (r.x + r.w)});
    const double dy = std::max ({r.y - (s.y + s.h), 0.0, s.y - (r.y + r.h)});
    return std::hypot (dx, dy);
}

double wall_distance (const Obstacle &ob, const ObstacleWorld &w)
{
    if (const auto *c = std::get_if<Circle> (&ob))
        return std::min ({c->c.x - w.xmin, w.xmax - c->c.x, c->c.y - w.ymin, w.ymax - c->c.y}) - c->radius;
    const Rect &r = std::get<Rect> (ob);
    return std::min ({r.x - w.xmin, w.xmax - (r.x + r.w), r.y - w.ymin, w.ymax - (r.y + r.h)});
}

double clearance (const ObstacleWorld &w, Vec2 p)
{
    double d = std::numeric_limits<double>::infinity ();
    for (const auto &ob : w.obstacles)
        d = std::min (d, point_distance (ob, p));
    return d;
}

double wall_clearance (const ObstacleWorld &w, Vec2 p) { return std::min ({p.x - w.xmin, w.xmax - p.x, p.y - w.ymin, w.ymax - p.y}); }

} // namespace

ObstacleWorld generate_world (const WorldGenConfig &cfg, const RobotGeometry &g, std::uint64_t seed)
{
    Rng rng (seed);
    ObstacleWorld w;
    const int count = rng.integer (cfg.min_obstacles, cfg.max_obstacles);
    for (int tries = 0; static_cast<int> (w.obstacles.size ()) < count && tries < 500; ++tries)
    {
        Obstacle ob;
        if (rng.uniform () < 0.5)
        {
            const double r = rng.uniform (cfg.circle_min, cfg.circle_max);
            ob = Circle{{rng.uniform (cfg.obstacle_xmin, cfg.obstacle_xmax), rng.uniform (w.ymin, w.ymax)}, r};
        }
        else
        {
            const double rw = rng.uniform (cfg.rect_min, cfg.rect_max);
            const double rh = rng.uniform (cfg.rect_min, cfg.rect_max);
            const double cx = rng.uniform (cfg.obstacle_xmin, cfg.obstacle_xmax);
            const double cy = rng.uniform (w.ymin, w.ymax);
            ob = Rect{cx - rw / 2.0, cy - rh / 2.0, rw, rh};
        }
        if (wall_distance (ob, w) < cfg.min_gap)
            continue;
        const bool clear = std::all_of (w.obstacles.begin (), w.obstacles.end (),
                                        [&] (const Obstacle &o) { return shape_distance (o, ob) >= cfg.min_gap; });
        if (clear)
            w.obstacles.push_back (ob);
    }

    const double body_radius = std::hypot (g.length, g.width) / 2.0;
    for (int tries = 0;; ++tries)
    {
        const Pose s{rng.uniform (cfg.start_xmin, cfg.start_xmax), rng.uniform (w.ymin + 0.1, w.ymax - 0.1),
                     wrap_angle (rng.uniform (-std::numbers::pi / 2.0, std::numbers::pi / 2.0))};
        if (clearance (w, {s.x, s.y}) >= body_radius + cfg.spawn_clearance && wall_clearance (w, {s.x, s.y}) > body_radius + 0.005)
        {
            w.start = s;
            break;
        }
        if (tries > 1000)
            throw std::runtime_error ("could not place a start pose");
    }
    for (int tries = 0;; ++tries)
    {
        const Vec2 t{rng.uniform (cfg.target_xmin, cfg.target_xmax), rng.uniform (w.ymin + 0.1, w.ymax - 0.1)};
        if (clearance (w, t) >= body_radius + cfg.spawn_clearance && wall_clearance (w, t) > body_radius + 0.005)
        {
            w.target = t;
            break;
        }
        if (tries > 1000)
            throw std::runtime_error ("could not place a target");
    }
    return w;
}

NavEnv::NavEnv (NavConfig cfg) : cfg_ (std::move (cfg)) { cfg_.geometry.validate (); }

Observation NavEnv::reset (std::uint64_t seed) { return reset (generate_world (cfg_.world, cfg_.geometry, seed)); }

Observation NavEnv::reset (const ObstacleWorld &world)
{
    world_ = world;
    pose_ = world_.start;
    steps_ = 0;
    outcome_ = cfg_.horizon > 0 ? Outcome::Running : Outcome::Timeout;
    return observe ();
}

Observation NavEnv::observe () const
{
    Observation o;
    o.lidar = raycast_lidar (pose_, world_, cfg_.geometry);
    o.pose = pose_;
    o.target = world_.target;
    o.update_polar ();
    return o;
}

StepResult NavEnv::step (const Action &a)
{
    if (done ())
        throw std::logic_error ("step called on a finished episode");
    const RobotGeometry &g = cfg_.geometry;
    const Action act{std::clamp (a.a0, -g.max_translation, g.max_translation), std::clamp (a.a1, -g.max_rotation, g.max_rotation)};

    StepResult r;
    const bool hit = step_collides (pose_, act, g, world_);
    pose_ = step_pose (pose_, act);
    ++steps_;
    if (hit)
    {
        outcome_ = Outcome::Collision;
        r.reward = cfg_.reward_collision;
    }
    else if (norm (Vec2{pose_.x, pose_.y} - world_.target) <= cfg_.success_radius)
    {
        outcome_ = Outcome::Success;
        r.reward = cfg_.reward_target;
    }
    else
    {
        r.reward = cfg_.reward_step;
        if (steps_ >= cfg_.horizon)
            outcome_ = Outcome::Timeout;
    }
    r.outcome = outcome_;
    r.terminated = done ();
    r.observation = observe ();
    return r;
}

} // namespace pshield
