#pragma once
/**
 * @file
 * @brief Ground constraints over one action (a0, a1) for a single step.
 */

#include <pshield/dynamics/quantize.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pshield
{

enum class TurnBound
{
    None,
    A1LeqZero, ///< right turns prohibited
    A1GeqZero, ///< left turns prohibited
    A1EqZero,
};

std::string to_string (TurnBound t);

/// One lidar return used for translation caps.
struct BeamReading
{
    double theta = 0.0;    ///< beam angle, clockwise from left
    double range = 0.0;    ///< measured distance
    double origin_u = 0.0; ///< forward body offset of the lidar the beam starts at
};

/// n0 * a0 + n1 * a1 >= c
struct HalfPlane
{
    double n0 = 0.0;
    double n1 = 0.0;
    double c = 0.0;
};

struct Interval
{
    double lo = 0.0;
    double hi = -1.0;
    bool empty () const { return lo > hi; }
};

struct ConstraintSet
{
    double a0_limit = 0.05;
    double a1_limit = 0.5;
    double safety = 1e-4; ///< strict inequalities are tightened by this much
    double clearance = 0.005; ///< distance kept from every return when translating

    TurnBound turn = TurnBound::None;

    std::vector<BeamReading> beams;
    double half_length = 0.05; ///< body half length
    double band = 0.05;        ///< lateral half width a return must be within to cap translation

    std::vector<HalfPlane> half_planes;

    QuantizationGrid grid;
    std::optional<PoseCell> pose_cell;
    std::vector<ActionCell> excluded;

    /// Rotation range allowed by the box and the turn bound.
    Interval turn_interval () const;
    /// Largest forward / backward translation for a given rotation, clamped to [0, a0_limit].
    double forward_cap (double a1) const;
    double backward_cap (double a1) const;
    /// a0 range allowed for a1 by box, caps and half-planes (cells not subtracted).
    Interval translation_interval (double a1) const;
    bool cell_excluded (const ActionCell &c) const;
};

bool satisfies (const Action &a, const ConstraintSet &c);

nlohmann::json to_json (const ConstraintSet &c);

} // namespace pshield
