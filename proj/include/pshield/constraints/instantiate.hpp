#pragma once

#include <pshield/constraints/constraint_set.hpp>
#include <pshield/constraints/history.hpp>
#include <pshield/constraints/observation.hpp>
#include <pshield/dynamics/thresholds.hpp>

#include <optional>

namespace pshield
{

struct ConstraintOptions
{
    bool collision = true;
    bool loop = true;
    double safety = 1e-4;      ///< tightening applied to strict translation bounds
    double clearance = 0.005;  ///< distance kept from every return when translating
    double band_margin = 0.02; ///< lateral inflation of the body band used for translation caps
    std::size_t gap_samples = 12;
    /// Neighbouring hits closer than this are taken to lie on the same obstacle; 0 disables the inference.
    double same_obstacle = 0.1;
};

/// Closest distance from the lidar to the disc spanned by two neighbouring hits.
/// Non-decreasing in both readings.
double gap_radius (double l0, double l1, double gap);

/// Wedge between two neighbouring hits, seen from origin_u on the body axis.
/// Any obstacle boundary joining the hits inside the wedge stays at least `radius` away.
struct GapReading
{
    double origin_u = 0.0;
    double lo = 0.0, hi = 0.0; ///< beam angles bounding the wedge
    double radius = 0.0;
};

/// One entry per gap (beam i to i + 1); nullopt when neither beam hits anything.
/// With one hit, the missing ray counts as free up to the lidar range only, so a corner may
/// reach past it beyond that range.
std::vector<std::optional<GapReading>> gap_readings (const std::vector<double> &lidar, const RobotGeometry &g, double same_obstacle = 0.0);

TurnBound turn_bound (const std::vector<double> &lidar, const TurnThresholds &th);
TurnBound turn_bound (const std::vector<double> &lidar, const TurnThresholds &th, const RobotGeometry &g, double same_obstacle = 0.0);

ConstraintSet instantiate (const Observation &o, const ShieldHistory &h, const RobotGeometry &g, const TurnThresholds &th,
                           const QuantizationGrid &grid, const ConstraintOptions &opt = {});

} // namespace pshield
