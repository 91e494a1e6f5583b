#include <pshield/constraints/history.hpp>

#include <algorithm>
#include <cmath>

namespace pshield
{

void ShieldHistory::push (const Pose &p, const Action &a, const QuantizationGrid &grid) { push (HistoryEntry{quantize (p, a, grid), p, a}); }

void ShieldHistory::push (const HistoryEntry &e)
{
    if (capacity_ == 0)
        return;
    entries_.push_back (e);
    while (entries_.size () > capacity_)
        entries_.pop_front ();
}

std::vector<ActionCell> ShieldHistory::actions_at (const PoseCell &cell) const
{
    std::vector<ActionCell> out;
    for (const auto &e : entries_)
        if (e.cells.pose == cell && std::find (out.begin (), out.end (), e.cells.action) == out.end ())
            out.push_back (e.cells.action);
    return out;
}

std::string ShieldHistory::feasibility_violation (double tol) const
{
    for (std::size_t i = 0; i < entries_.size (); ++i)
        for (std::size_t j = i + 1; j < entries_.size (); ++j)
            if (entries_[i].cells == entries_[j].cells)
                return "entries " + std::to_string (i) + " and " + std::to_string (j) + " repeat the same cell tuple";
    for (std::size_t i = 0; i + 1 < entries_.size (); ++i)
    {
        const Pose next = step_pose (entries_[i].pose, entries_[i].action);
        const Pose &got = entries_[i + 1].pose;
        if (std::fabs (next.x - got.x) > tol || std::fabs (next.y - got.y) > tol || std::fabs (wrap_angle (next.r - got.r)) > tol)
            return "entry " + std::to_string (i + 1) + " is not reachable from entry " + std::to_string (i);
    }
    return {};
}

} // namespace pshield
