#pragma once
/**
 * @file
 * @brief Offline realizability check over a finite adversarial domain.
 *
 * The environment controls the observation and the shield history, the shield
 * controls the action. A configuration is realizable when every abstract cell of
 * the domain leaves at least one admissible action.
 */

#include <pshield/core/shield.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pshield
{

struct AdversarialDomain
{
    /// Lidar magnitudes per class (front centre, rear centre), as translation caps spread over [0, L0].
    int ladder_rungs = 8;
    /// Lidar states whose free translation span at a1 = 0 is below this are assumed unreachable.
    /// Negative means half the translation limit.
    double min_span = -1.0;
    /// Only accept histories that a trajectory staying inside the pose cell could have produced.
    bool feasible_history = false;
};

/// One lidar class: which beams sit on their turn threshold plus the ladder rungs.
struct ObservationClass
{
    TurnBound turn = TurnBound::None;
    int right_trigger = -1; ///< beam held at its right threshold, -1 if none
    int left_trigger = -1;
    int front_rung = 0;
    int rear_rung = 0;
};

struct Counterexample
{
    PoseCell pose_cell;
    ObservationClass cls;
    Observation observation;
    std::vector<HistoryEntry> history;
    nlohmann::json constraints; ///< the instantiated set, for the report
};

struct RealizabilityVerdict
{
    enum class Kind
    {
        Realizable,
        Unrealizable,
        Unknown,
    };

    Kind kind = Kind::Unknown;
    std::optional<Counterexample> witness;
    std::size_t domain_size = 0;
    std::size_t cells_checked = 0;
    std::size_t cells_assumed_unreachable = 0;
    double wall_ms = 0.0;
};

std::string to_string (RealizabilityVerdict::Kind k);

/// Every observation class of the domain, in sweep order.
std::vector<ObservationClass> observation_classes (const RobotGeometry &g, const TurnThresholds &th, const AdversarialDomain &d);

/// Concrete lidar scan realising a class.
std::vector<double> class_lidar (const ObservationClass &c, const RobotGeometry &g, const TurnThresholds &th, const ConstraintOptions &opt,
                                 const AdversarialDomain &d);

/// budget limits the number of cells examined; 0 means unlimited.
RealizabilityVerdict check_realizability (const ShieldConfig &cfg, const RobotGeometry &geom, const AdversarialDomain &domain = {},
                                          std::size_t budget = 0, const ThresholdConfig &tcfg = {});

/// Replays the witness and scans a grid of about 10^6 actions. True when none is admissible.
/// Throws std::invalid_argument if the verdict has no witness or it lies outside the grid.
bool confirm_counterexample (const RealizabilityVerdict &v, const ShieldConfig &cfg, const RobotGeometry &geom,
                             const ThresholdConfig &tcfg = {}, int points_per_axis = 1001);

nlohmann::json to_json (const RealizabilityVerdict &v);

} // namespace pshield
