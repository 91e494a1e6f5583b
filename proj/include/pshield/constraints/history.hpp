#pragma once

#include <pshield/dynamics/quantize.hpp>

#include <deque>
#include <string>
#include <vector>

namespace pshield
{

struct HistoryEntry
{
    CellTuple cells;
    Pose pose;     ///< raw values kept for diagnostics
    Action action;
};

/// Bounded FIFO of executed (pose, action) tuples; pushing onto a full queue drops the oldest.
class ShieldHistory
{
public:
    explicit ShieldHistory (std::size_t capacity = 0) : capacity_ (capacity) {}

    std::size_t capacity () const { return capacity_; }
    std::size_t size () const { return entries_.size (); }
    bool empty () const { return entries_.empty (); }
    const std::deque<HistoryEntry> &entries () const { return entries_; }

    void push (const Pose &p, const Action &a, const QuantizationGrid &grid);
    void push (const HistoryEntry &e);
    void clear () { entries_.clear (); }

    /// Action cells recorded at the given pose cell, oldest first, without duplicates.
    std::vector<ActionCell> actions_at (const PoseCell &cell) const;

    /// Checks the feasible-history properties: no repeated tuple and every consecutive
    /// pair of raw poses connected by step_pose under its recorded action.
    /// Returns an empty string when they hold, otherwise a description of the violation.
    std::string feasibility_violation (double tol = 1e-9) const;

private:
    std::size_t capacity_;
    std::deque<HistoryEntry> entries_;
};

} // namespace pshield
