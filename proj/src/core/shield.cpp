#include <pshield/core/shield.hpp>

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace pshield
{

void ShieldConfig::validate () const
{
    if (pose_cells < 1 || action_cells < 1)
        throw std::invalid_argument ("G_P and G_A must be at least 1");
    if (solver.eps1 < 0.0 || solver.eps0 < 0.0 || !(solver.timeout_ms > 0.0))
        throw std::invalid_argument ("solver resolutions must be non-negative and the timeout positive");
    if (constraints.safety < 0.0 || constraints.clearance < 0.0 || constraints.band_margin < 0.0)
        throw std::invalid_argument ("constraint margins must be non-negative");
}

QuantizationGrid ShieldConfig::grid (const RobotGeometry &g) const
{
    QuantizationGrid q;
    q.pose_cells = pose_cells;
    q.action_cells = action_cells;
    q.a0_limit = g.max_translation;
    q.a1_limit = g.max_rotation;
    return q;
}

ConstraintOptions ShieldConfig::constraint_options () const
{
    ConstraintOptions o = constraints;
    o.collision = collision;
    o.loop = loop;
    return o;
}

std::string to_string (SolverPath p)
{
    switch (p)
    {
    case SolverPath::PassThrough: return "pass-through";
    case SolverPath::Optimizer: return "optimizer";
    case SolverPath::FallbackSol: return "fallback-sol";
    case SolverPath::Unsat: return "unsat";
    }
    return "?";
}

Shield::Shield (RobotGeometry geom, ShieldConfig cfg, ThresholdConfig tcfg)
    : geom_ (std::move (geom)), cfg_ (std::move (cfg)), th_ (precompute_turn_thresholds (geom_, tcfg)), grid_ (cfg_.grid (geom_))
{
    cfg_.validate ();
    grid_.validate ();
}

ConstraintSet Shield::constraints (const Observation &o, const ShieldHistory &h) const
{
    return instantiate (o, h, geom_, th_, grid_, cfg_.constraint_options ());
}

StepOutcome Shield::step (const Action &proposal, const Observation &o, ShieldHistory &h) const
{
    const auto t0 = std::chrono::steady_clock::now ();
    StepOutcome out;
    out.proposal = proposal;
    const Action clamped{std::clamp (proposal.a0, -geom_.max_translation, geom_.max_translation),
                         std::clamp (proposal.a1, -geom_.max_rotation, geom_.max_rotation)};

    const ConstraintSet c = constraints (o, h);
    if (satisfies (clamped, c))
    {
        out.executed = clamped;
        out.path = SolverPath::PassThrough;
    }
    else
    {
        SolveResult r;
        if (cfg_.optimizer)
        {
            r = solve_closest (c, clamped, cfg_.solver);
            out.path = SolverPath::Optimizer;
            if (r.status == SolveStatus::Timeout)
            {
                r = solve_any (c, cfg_.solver);
                out.path = SolverPath::FallbackSol;
            }
        }
        else
        {
            r = solve_any (c, cfg_.solver);
            out.path = SolverPath::FallbackSol;
        }

        if (r.safe ())
            out.executed = r.action;
        else
        {
            // No action meets every requirement. Keep the collision part: drop the loop
            // exclusions and take any action that is still collision-free.
            out.path = SolverPath::Unsat;
            ConstraintSet relaxed = c;
            relaxed.excluded.clear ();
            const SolveResult fallback = solve_any (relaxed, cfg_.solver);
            out.executed = fallback.safe () ? fallback.action : clamped;
        }
    }
    out.intervened = !(out.executed == proposal);
    if (h.capacity () > 0)
    {
        h.push (o.pose, out.executed, grid_);
        if (cfg_.check_history)
            if (auto v = h.feasibility_violation (); !v.empty ())
                throw std::logic_error ("shield history invariant broken: " + v);
    }
    out.latency_ms = std::chrono::duration<double, std::milli> (std::chrono::steady_clock::now () - t0).count ();
    return out;
}

} // namespace pshield
