#pragma once

#include <pshield/constraints/instantiate.hpp>
#include <pshield/solver/action_solver.hpp>

#include <string>

namespace pshield
{

struct ShieldConfig
{
    std::size_t queue_length = 30; ///< L_Q
    int pose_cells = 10;           ///< G_P
    int action_cells = 13;         ///< G_A
    bool collision = true;
    bool loop = true;
    bool optimizer = true;
    bool check_history = false; ///< assert the feasible-history properties after every push
    SolverConfig solver;
    ConstraintOptions constraints;

    void validate () const;
    QuantizationGrid grid (const RobotGeometry &g) const;
    ConstraintOptions constraint_options () const;
};

enum class SolverPath
{
    PassThrough,
    Optimizer,
    FallbackSol,
    Unsat,
};

std::string to_string (SolverPath p);

struct StepOutcome
{
    Action proposal;
    Action executed;
    bool intervened = false;
    SolverPath path = SolverPath::PassThrough;
    double latency_ms = 0.0;
};

/// The shield function plus the fixed data it is built from.
class Shield
{
public:
    Shield (RobotGeometry geom, ShieldConfig cfg, ThresholdConfig tcfg = {});

    const RobotGeometry &geometry () const { return geom_; }
    const ShieldConfig &config () const { return cfg_; }
    const TurnThresholds &thresholds () const { return th_; }
    const QuantizationGrid &grid () const { return grid_; }

    ConstraintSet constraints (const Observation &o, const ShieldHistory &h) const;

    /// Corrects the proposal if needed and records the executed action in h.
    StepOutcome step (const Action &proposal, const Observation &o, ShieldHistory &h) const;

    ShieldHistory make_history () const { return ShieldHistory (cfg_.loop ? cfg_.queue_length : 0); }

private:
    RobotGeometry geom_;
    ShieldConfig cfg_;
    TurnThresholds th_;
    QuantizationGrid grid_;
};

} // namespace pshield
