#pragma once

#include <pshield/constraints/observation.hpp>
#include <pshield/envs/rng.hpp>

#include <memory>
#include <string>
#include <vector>

namespace pshield
{

class Policy
{
public:
    virtual ~Policy () = default;
    virtual void reset (std::uint64_t seed) = 0;
    virtual Action act (const Observation &o) = 0;
};

struct GoalSeekerParams
{
    double turn_gain = 1.5;       ///< rotation per radian of bearing error
    double repulsion_gain = 1.2;  ///< 0 disables all lidar terms
    double repulsion_range = 0.15;
    double stop_distance = 0.06;  ///< forward speed drops to 0 at this front clearance
    bool brake = true;            ///< slow down in front of obstacles
    double noise = 0.05;          ///< std of rotation noise, radians
    int stall_window = 4;         ///< steps over which progress toward the target is measured; 0 disables detours
    double stall_progress = 0.01; ///< less progress than this over the window starts a detour
    int detour_steps = 6;
    int reverse_steps = 3;        ///< the first steps of a detour back up at half speed
    double bump_distance = 0.02;   ///< a detour also starts when the front clearance drops below this
};

/// Proportional heading controller toward the target with optional lidar repulsion.
/// When progress stalls it steers at a random side bearing for a few steps.
class GoalSeeker : public Policy
{
public:
    GoalSeeker (RobotGeometry g, GoalSeekerParams p) : g_ (std::move (g)), p_ (p) {}
    void reset (std::uint64_t seed) override;
    Action act (const Observation &o) override;

private:
    double front_clearance (const Observation &o) const;
    void start_detour (const Observation &o);

    RobotGeometry g_;
    GoalSeekerParams p_;
    Rng rng_;
    std::vector<double> distances_;
    int detour_left_ = 0;
    double detour_offset_ = 0.0; ///< bearing added to the target heading during a detour
};

/// Known ids: expert, moderate, unsafe.
std::unique_ptr<Policy> make_policy (const std::string &id, const RobotGeometry &g);

} // namespace pshield
