#pragma once
/**
 * @file
 * @brief Sweep-and-project solver over a ConstraintSet.
 *
 * Candidate rotations are a uniform grid over the admissible turn range plus every
 * rotation where the constraint structure changes (cell edges, half-plane crossings,
 * zero). For each candidate the admissible translations form a union of intervals
 * that is computed exactly.
 */

#include <pshield/constraints/constraint_set.hpp>

#include <vector>

namespace pshield
{

enum class SolveStatus
{
    Safe,
    Unsat,
    Timeout,
};

std::string to_string (SolveStatus s);

struct SolveResult
{
    SolveStatus status = SolveStatus::Unsat;
    Action action;

    bool safe () const { return status == SolveStatus::Safe; }
};

struct SolverConfig
{
    double eps1 = 0.0;          ///< rotation grid spacing; 0 means a1_limit / 200
    double eps0 = 0.0;          ///< translation resolution; 0 means a0_limit / 200
    double timeout_ms = 50.0;   ///< deadline for solve_closest
    int refine_iterations = 40; ///< bisection steps toward the proposal's rotation
};

/// Admissible translations for a fixed rotation, as disjoint closed intervals in increasing order.
std::vector<Interval> feasible_translations (const ConstraintSet &c, double a1, const SolverConfig &cfg);

/// Candidate rotations in increasing order.
std::vector<double> rotation_candidates (const ConstraintSet &c, const SolverConfig &cfg);

SolveResult solve_any (const ConstraintSet &c, const SolverConfig &cfg = {});
SolveResult solve_closest (const ConstraintSet &c, const Action &proposal, const SolverConfig &cfg = {});

} // namespace pshield
