#pragma once
/**
 * @file
 * @brief Static obstacle worlds, exact lidar raycasts and footprint collision tests.
 *
 * World file (text, '#' starts a comment):
 *
 *     pshield-world 1
 *     arena 0 0 1 1
 *     rect 0.4 0.4 0.1 0.2       # lower-left x y, width, height
 *     circle 0.7 0.3 0.06        # centre x y, radius
 *     start 0.1 0.5 0.0          # x y heading
 *     target 0.9 0.5
 */

#include <pshield/dynamics/geometry.hpp>

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pshield
{

struct Circle
{
    Vec2 c;
    double radius = 0.0;
};

struct Rect
{
    double x = 0.0, y = 0.0, w = 0.0, h = 0.0; ///< lower-left corner and size

    Polygon polygon () const { return {{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}}; }
};

using Obstacle = std::variant<Circle, Rect>;

struct ObstacleWorld
{
    double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;
    std::vector<Obstacle> obstacles;
    Pose start{0.1, 0.5, 0.0};
    Vec2 target{0.9, 0.5};

    bool inside_arena (Vec2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

/// Distance to the first obstacle or wall along the ray, clamped to max_range.
double raycast (const ObstacleWorld &w, Vec2 origin, Vec2 dir, double max_range);
std::vector<double> raycast_lidar (const Pose &p, const ObstacleWorld &w, const RobotGeometry &g);

/// True when the polygon touches an obstacle or leaves the arena.
bool polygon_collides (const Polygon &poly, const ObstacleWorld &w);
bool footprint_collides (const Pose &p, const RobotGeometry &g, const ObstacleWorld &w);
/// Checks the area swept by the rotate-then-translate step.
bool step_collides (const Pose &p, const Action &a, const RobotGeometry &g, const ObstacleWorld &w);

ObstacleWorld parse_world (std::istream &in);
ObstacleWorld load_world (const std::string &path);
void write_world (std::ostream &out, const ObstacleWorld &w);

} // namespace pshield
