#pragma once
/**
 * @file
 * @brief Planar vector helpers, the rectangular robot body and its lidar layout.
 *
 * Body frame: u points forward, v points left. Beam angles are measured
 * clockwise from the robot's left, so a beam at theta has body direction
 * (sin theta, cos theta).
 */

#include <pshield/dynamics/pose.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace pshield
{

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+ (Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator- (Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator* (double s) const { return {x * s, y * s}; }
    bool operator== (const Vec2 &) const = default;
};

inline double dot (Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross (Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm (Vec2 a) { return std::hypot (a.x, a.y); }
inline Vec2 rotate (Vec2 a, double ang) { return {a.x * std::cos (ang) - a.y * std::sin (ang), a.x * std::sin (ang) + a.y * std::cos (ang)}; }

using Polygon = std::vector<Vec2>; ///< counter-clockwise, convex unless stated

Polygon convex_hull (std::vector<Vec2> pts);
bool point_in_convex (const Polygon &poly, Vec2 p);
/// Largest t >= 0 with origin + t*dir inside the convex polygon; nullopt if the ray misses.
std::optional<double> ray_exit_convex (const Polygon &poly, Vec2 origin, Vec2 dir);
bool segments_intersect (Vec2 a, Vec2 b, Vec2 c, Vec2 d);
bool convex_overlap (const Polygon &a, const Polygon &b);

struct RobotGeometry
{
    double width = 0.1;
    double length = 0.1;
    double front_offset = 0.03; ///< front lidar to front edge (Hf)
    double back_offset = 0.03;  ///< rear lidar to back edge (Hb)
    double max_translation = 0.05;
    double max_rotation = std::numbers::pi / 6.0;
    double lidar_range = 0.3;
    std::vector<double> beam_angles = default_beams (23);

    /// n beams evenly spaced around the full circle, the middle one pointing forward.
    static std::vector<double> default_beams (std::size_t n);

    /// Throws std::invalid_argument on degenerate geometry.
    void validate () const;

    std::size_t beam_count () const { return beam_angles.size (); }
    bool is_front_beam (std::size_t i) const;
    /// Forward body coordinate of the lidar a beam originates from.
    double beam_origin_u (std::size_t i) const;
    Vec2 beam_origin (const Pose &p, std::size_t i) const;
    Vec2 beam_direction (const Pose &p, std::size_t i) const;

    /// Beam i and its clockwise neighbour (i + 1, wrapping) start at the same lidar.
    bool gap_shares_origin (std::size_t i) const;
    /// Angle from beam i to its clockwise neighbour.
    double gap_width (std::size_t i) const;

    /// Corners of the body rectangle, counter-clockwise.
    Polygon footprint (const Pose &p) const;
};

} // namespace pshield
