#pragma once

#include <pshield/dynamics/pose.hpp>

#include <compare>
#include <cstddef>

namespace pshield
{

/// Uniform cell index of v over [lo, hi] with n cells; a value on a cell boundary
/// belongs to the lower cell. Throws std::out_of_range outside [lo, hi].
int cell_index (double v, double lo, double hi, int n);
/// Bounds of cell k: values in (lower, upper] map to k, and cell 0 also takes lo itself.
double cell_lower (int k, double lo, double hi, int n);
double cell_upper (int k, double lo, double hi, int n);

struct PoseCell
{
    int ix = 0, iy = 0, ir = 0;
    auto operator<=> (const PoseCell &) const = default;
};

struct ActionCell
{
    int i0 = 0; ///< translation axis
    int i1 = 0; ///< rotation axis
    auto operator<=> (const ActionCell &) const = default;
};

struct CellTuple
{
    PoseCell pose;
    ActionCell action;
    auto operator<=> (const CellTuple &) const = default;
};

struct QuantizationGrid
{
    int pose_cells = 10;   ///< G_P, per axis (x, y and heading)
    int action_cells = 13; ///< G_A, per axis
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    double a0_limit = 0.05;
    double a1_limit = std::numbers::pi / 6.0;

    void validate () const;
    PoseCell pose_cell (const Pose &p) const;
    ActionCell action_cell (const Action &a) const;
    /// Bounds of an action cell along each axis: (lo, hi] with the first cell closed at lo.
    void action_bounds (const ActionCell &c, double &a0_lo, double &a0_hi, double &a1_lo, double &a1_hi) const;
};

CellTuple quantize (const Pose &p, const Action &a, const QuantizationGrid &grid);

} // namespace pshield
