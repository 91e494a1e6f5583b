#pragma once

#include <pshield/dynamics/geometry.hpp>

#include <vector>

namespace pshield
{

struct ThresholdConfig
{
    double sweep_step = 0.5 * std::numbers::pi / 180.0; ///< rotation discretisation of the swept area
    double margin = 0.01;                               ///< added to every nonzero threshold
    /// Each beam is checked over directions within this angle on either side, so that
    /// obstacles sitting between two beams are still covered. Negative means half the beam gap.
    double spread = -1.0;
    /// Directions sampled inside each gap between two beams of the same lidar.
    std::size_t gap_samples = 8;
    double gap_margin = 0.002; ///< added to gap thresholds, which are already sampled densely
};

struct TurnThresholds
{
    std::vector<double> right; ///< per beam, 0 when a full right turn cannot reach along that beam
    std::vector<double> left;
    /// Per gap (beam i to i + 1), the largest threshold over the directions of its span.
    std::vector<double> gap_right;
    std::vector<double> gap_left;
    std::size_t gap_samples = 0;

    bool right_relevant (std::size_t i) const { return right[i] > 0.0; }
    bool left_relevant (std::size_t i) const { return left[i] > 0.0; }
};

/// Largest distance from the beam origin at which a point can be hit by the body
/// rotating in place by up to `turn` (positive = right), or nullopt if the sweep
/// adds nothing beyond the resting footprint in that direction.
std::optional<double> sweep_reach (const RobotGeometry &g, std::size_t beam, double direction_offset, double turn, double sweep_step);

/// Same, for a ray leaving the body axis at origin_u with beam angle theta.
std::optional<double> sweep_reach_from (const RobotGeometry &g, double origin_u, double theta, double turn, double sweep_step);

/// Directions covering gap i. Gaps between beams of one lidar are measured from that lidar;
/// gaps between the two lidars are measured from the body centre.
struct GapSpan
{
    double origin_u = 0.0;
    double lo = 0.0, hi = 0.0;
};

GapSpan gap_span (const RobotGeometry &g, std::size_t i);

TurnThresholds precompute_turn_thresholds (const RobotGeometry &g, const ThresholdConfig &cfg = {});

} // namespace pshield
