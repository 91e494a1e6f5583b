#include <pshield/dynamics/quantize.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pshield
{

double cell_lower (int k, double lo, double hi, int n) { return lo + (hi - lo) * k / n; }
double cell_upper (int k, double lo, double hi, int n) { return k == n - 1 ? hi : lo + (hi - lo) * (k + 1) / n; }

int cell_index (double v, double lo, double hi, int n)
{
    if (!(v >= lo && v <= hi))
        throw std::out_of_range ("value " + std::to_string (v) + " outside [" + std::to_string (lo) + ", " + std::to_string (hi) + "]");
    const double w = (hi - lo) / n;
    int k = std::clamp (static_cast<int> (std::ceil ((v - lo) / w)) - 1, 0, n - 1);
    // settle rounding at the edges against the exact bounds
    while (k > 0 && v <= cell_upper (k - 1, lo, hi, n))
        --k;
    while (k < n - 1 && v > cell_upper (k, lo, hi, n))
        ++k;
    return k;
}

void QuantizationGrid::validate () const
{
    if (pose_cells < 1 || action_cells < 1)
        throw std::invalid_argument ("grid resolutions must be at least 1");
    if (!(xmax > xmin) || !(ymax > ymin) || !(a0_limit > 0.0) || !(a1_limit > 0.0))
        throw std::invalid_argument ("grid domains must be non-empty");
}

PoseCell QuantizationGrid::pose_cell (const Pose &p) const
{
    return {cell_index (p.x, xmin, xmax, pose_cells), cell_index (p.y, ymin, ymax, pose_cells),
            cell_index (wrap_angle (p.r), -std::numbers::pi, std::numbers::pi, pose_cells)};
}

ActionCell QuantizationGrid::action_cell (const Action &a) const
{
    return {cell_index (a.a0, -a0_limit, a0_limit, action_cells), cell_index (a.a1, -a1_limit, a1_limit, action_cells)};
}

void QuantizationGrid::action_bounds (const ActionCell &c, double &a0_lo, double &a0_hi, double &a1_lo, double &a1_hi) const
{
    a0_lo = cell_lower (c.i0, -a0_limit, a0_limit, action_cells);
    a0_hi = cell_upper (c.i0, -a0_limit, a0_limit, action_cells);
    a1_lo = cell_lower (c.i1, -a1_limit, a1_limit, action_cells);
    a1_hi = cell_upper (c.i1, -a1_limit, a1_limit, action_cells);
}

CellTuple quantize (const Pose &p, const Action &a, const QuantizationGrid &grid) { return {grid.pose_cell (p), grid.action_cell (a)}; }

} // namespace pshield
