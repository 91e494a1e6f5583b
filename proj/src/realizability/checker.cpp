#include <pshield/realizability/checker.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pshield
{

std::string to_string (RealizabilityVerdict::Kind k)
{
    switch (k)
    {
    case RealizabilityVerdict::Kind::Realizable: return "realizable";
    case RealizabilityVerdict::Kind::Unrealizable: return "unrealizable";
    case RealizabilityVerdict::Kind::Unknown: return "unknown";
    }
    return "?";
}

namespace
{

std::size_t nearest_beam (const RobotGeometry &g, double theta)
{
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t i = 0; i < g.beam_count (); ++i)
    {
        const double d = std::fabs (wrap_angle (g.beam_angles[i] - theta));
        if (d < best_d)
        {
            best_d = d;
            best = i;
        }
    }
    return best;
}

/// Reading on beam i that leaves exactly `cap` of translation at a1 = 0.
double reading_for_cap (const RobotGeometry &g, std::size_t i, double cap, double sign, const ConstraintOptions &opt)
{
    const double along = sign * std::sin (g.beam_angles[i]);
    const double edge = g.length / 2.0 - sign * g.beam_origin_u (i);
    return std::min (g.lidar_range, (edge + opt.clearance + opt.safety + cap) / along);
}

double rung_cap (const RobotGeometry &g, int rung, int rungs)
{
    return rungs > 1 ? g.max_translation * rung / (rungs - 1) : g.max_translation;
}

double min_span (const RobotGeometry &g, const AdversarialDomain &d) { return d.min_span >= 0.0 ? d.min_span : g.max_translation / 2.0; }

/// Point of the cell closest to zero on one axis.
double toward_zero (double lo, double hi, bool closed_lo)
{
    if (lo < 0.0 && hi >= 0.0)
        return 0.0;
    if (hi < 0.0)
        return hi;
    if (closed_lo)
        return lo;
    return lo + (hi - lo) * 1e-6;
}

Action cell_representative (const QuantizationGrid &grid, const ActionCell &cell)
{
    double lo0, hi0, lo1, hi1;
    grid.action_bounds (cell, lo0, hi0, lo1, hi1);
    Action a{toward_zero (lo0, hi0, cell.i0 == 0), toward_zero (lo1, hi1, cell.i1 == 0)};
    if (!(grid.action_cell (a) == cell))
        a = {(lo0 + hi0) / 2.0, (lo1 + hi1) / 2.0};
    return a;
}

Pose cell_centre (const QuantizationGrid &grid, const PoseCell &c)
{
    const int n = grid.pose_cells;
    const double pi = std::numbers::pi;
    return {(cell_lower (c.ix, grid.xmin, grid.xmax, n) + cell_upper (c.ix, grid.xmin, grid.xmax, n)) / 2.0,
            (cell_lower (c.iy, grid.ymin, grid.ymax, n) + cell_upper (c.iy, grid.ymin, grid.ymax, n)) / 2.0,
            (cell_lower (c.ir, -pi, pi, n) + cell_upper (c.ir, -pi, pi, n)) / 2.0};
}

/// History entries for the excluded cells. In feasible mode the entries must chain
/// through step_pose without leaving the pose cell; returns false if they cannot.
bool build_history (const std::vector<ActionCell> &cells, const QuantizationGrid &grid, const PoseCell &pc, bool feasible,
                    std::vector<HistoryEntry> &out, Pose &current)
{
    out.clear ();
    Pose p = cell_centre (grid, pc);
    for (const ActionCell &c : cells)
    {
        const Action a = cell_representative (grid, c);
        out.push_back ({CellTuple{pc, c}, p, a});
        if (feasible)
        {
            p = step_pose (p, a);
            if (!(grid.pose_cell (p) == pc))
                return false;
        }
    }
    current = p;
    return true;
}

struct CellResult
{
    bool unreachable = false;
    bool counterexample = false;
    std::vector<HistoryEntry> history;
    Observation observation;
    ConstraintSet constraints;
};

CellResult check_class (const Shield &sh, const ObservationClass &cls, const PoseCell &pc, const AdversarialDomain &d)
{
    const RobotGeometry &g = sh.geometry ();
    const ShieldConfig &cfg = sh.config ();
    CellResult r;
    r.observation.lidar = class_lidar (cls, g, sh.thresholds (), cfg.constraint_options (), d);
    r.observation.pose = cell_centre (sh.grid (), pc);
    r.observation.update_polar ();

    ConstraintSet c = sh.constraints (r.observation, ShieldHistory (cfg.queue_length));
    if (cfg.collision && c.forward_cap (0.0) + c.backward_cap (0.0) < min_span (g, d))
    {
        r.unreachable = true;
        return r;
    }

    const std::size_t exclusions = cfg.loop ? cfg.queue_length : 0;
    std::vector<ActionCell> cells;
    for (std::size_t k = 0;; ++k)
    {
        const SolveResult s = solve_any (c, cfg.solver);
        if (!s.safe ())
            break;
        if (k == exclusions)
            return r;
        cells.push_back (sh.grid ().action_cell (s.action));
        c.excluded.push_back (cells.back ());
    }

    Pose current;
    if (!build_history (cells, sh.grid (), pc, d.feasible_history, r.history, current))
        return r;
    r.observation.pose = current;
    r.observation.update_polar ();
    r.counterexample = true;
    r.constraints = std::move (c);
    return r;
}

} // namespace

std::vector<ObservationClass> observation_classes (const RobotGeometry &g, const TurnThresholds &th, const AdversarialDomain &d)
{
    if (d.ladder_rungs < 1)
        throw std::invalid_argument ("the lidar ladder needs at least one rung");
    std::vector<int> right, left;
    for (std::size_t i = 0; i < g.beam_count (); ++i)
    {
        if (th.right_relevant (i))
            right.push_back (static_cast<int> (i));
        if (th.left_relevant (i))
            left.push_back (static_cast<int> (i));
    }

    std::vector<ObservationClass> triggers{{TurnBound::None, -1, -1}};
    for (int i : right)
        triggers.push_back ({TurnBound::A1LeqZero, i, -1});
    for (int j : left)
        triggers.push_back ({TurnBound::A1GeqZero, -1, j});
    for (int i : right)
        for (int j : left)
            triggers.push_back ({TurnBound::A1EqZero, i, j});

    std::vector<ObservationClass> out;
    out.reserve (triggers.size () * d.ladder_rungs * d.ladder_rungs);
    for (const auto &t : triggers)
        for (int f = 0; f < d.ladder_rungs; ++f)
            for (int b = 0; b < d.ladder_rungs; ++b)
            {
                ObservationClass c = t;
                c.front_rung = f;
                c.rear_rung = b;
                out.push_back (c);
            }
    return out;
}

std::vector<double> class_lidar (const ObservationClass &c, const RobotGeometry &g, const TurnThresholds &th, const ConstraintOptions &opt,
                                 const AdversarialDomain &d)
{
    std::vector<double> lidar (g.beam_count (), g.lidar_range);
    const std::size_t front = nearest_beam (g, std::numbers::pi / 2.0);
    lidar[front] = reading_for_cap (g, front, rung_cap (g, c.front_rung, d.ladder_rungs), 1.0, opt);
    // the two beams either side of straight back
    const std::size_t back = nearest_beam (g, 1.5 * std::numbers::pi);
    std::vector<std::size_t> rear{back};
    const std::size_t other = std::sin (g.beam_angles[(back + 1) % g.beam_count ()]) < std::sin (g.beam_angles[(back + g.beam_count () - 1) % g.beam_count ()])
                                  ? (back + 1) % g.beam_count ()
                                  : (back + g.beam_count () - 1) % g.beam_count ();
    rear.push_back (other);
    for (std::size_t i : rear)
        lidar[i] = reading_for_cap (g, i, rung_cap (g, c.rear_rung, d.ladder_rungs), -1.0, opt);
    if (c.right_trigger >= 0)
        lidar[c.right_trigger] = std::min (lidar[c.right_trigger], th.right[c.right_trigger]);
    if (c.left_trigger >= 0)
        lidar[c.left_trigger] = std::min (lidar[c.left_trigger], th.left[c.left_trigger]);
    return lidar;
}

RealizabilityVerdict check_realizability (const ShieldConfig &cfg, const RobotGeometry &geom, const AdversarialDomain &domain, std::size_t budget,
                                          const ThresholdConfig &tcfg)
{
    const auto t0 = std::chrono::steady_clock::now ();
    const Shield sh (geom, cfg, tcfg);
    const std::vector<ObservationClass> classes = observation_classes (geom, sh.thresholds (), domain);
    const std::size_t poses = static_cast<std::size_t> (cfg.pose_cells) * cfg.pose_cells * cfg.pose_cells;

    RealizabilityVerdict v;
    v.domain_size = classes.size () * poses;

    // Constraints see the pose only through its cell label, so one representative
    // pose cell per class stands for all of them.
    std::size_t limit = classes.size ();
    if (budget > 0)
        limit = std::min (limit, budget / poses);
    const PoseCell rep{};

    std::vector<CellResult> results (limit);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_bad{limit};
    auto work = [&] {
        for (std::size_t i = next++; i < limit; i = next++)
        {
            if (i > first_bad.load ())
                continue;
            results[i] = check_class (sh, classes[i], rep, domain);
            if (results[i].counterexample)
            {
                std::size_t cur = first_bad.load ();
                while (i < cur && !first_bad.compare_exchange_weak (cur, i))
                    ;
            }
        }
    };
    const unsigned nt = std::max (1u, std::min (8u, std::thread::hardware_concurrency ()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back (work);
    for (auto &t : pool)
        t.join ();

    const std::size_t bad = first_bad.load ();
    const std::size_t examined = std::min (limit, bad + 1);
    for (std::size_t i = 0; i < examined; ++i)
        v.cells_assumed_unreachable += results[i].unreachable ? poses : 0;
    v.cells_checked = examined * poses;
    if (bad < limit)
    {
        CellResult &r = results[bad];
        v.kind = RealizabilityVerdict::Kind::Unrealizable;
        v.witness = Counterexample{rep, classes[bad], r.observation, r.history, to_json (r.constraints)};
    }
    else
        v.kind = limit < classes.size () ? RealizabilityVerdict::Kind::Unknown : RealizabilityVerdict::Kind::Realizable;
    v.wall_ms = std::chrono::duration<double, std::milli> (std::chrono::steady_clock::now () - t0).count ();
    return v;
}

bool confirm_counterexample (const RealizabilityVerdict &v, const ShieldConfig &cfg, const RobotGeometry &geom, const ThresholdConfig &tcfg,
                             int points_per_axis)
{
    if (v.kind != RealizabilityVerdict::Kind::Unrealizable || !v.witness)
        throw std::invalid_argument ("only an unrealizable verdict carries a counterexample");
    if (points_per_axis < 3)
        throw std::invalid_argument ("the action scan needs at least 3 points per axis");
    const Counterexample &w = *v.witness;
    const Shield sh (geom, cfg, tcfg);
    if (w.observation.lidar.size () != geom.beam_count ())
        throw std::invalid_argument ("witness lidar does not match the geometry");
    if (w.history.size () > cfg.queue_length)
        throw std::invalid_argument ("witness history is longer than the queue");

    ShieldHistory h (cfg.queue_length);
    for (const auto &e : w.history)
    {
        if (!(sh.grid ().pose_cell (e.pose) == e.cells.pose) || !(sh.grid ().action_cell (e.action) == e.cells.action))
            throw std::invalid_argument ("witness history entry lies outside its recorded cells");
        h.push (e);
    }
    if (!(sh.grid ().pose_cell (w.observation.pose) == w.pose_cell))
        throw std::invalid_argument ("witness pose lies outside its pose cell");

    const ConstraintSet c = sh.constraints (w.observation, h);
    const int n = points_per_axis;
    for (int i = 0; i < n; ++i)
    {
        const double a0 = -geom.max_translation + 2.0 * geom.max_translation * i / (n - 1);
        for (int j = 0; j < n; ++j)
        {
            const double a1 = -geom.max_rotation + 2.0 * geom.max_rotation * j / (n - 1);
            if (satisfies ({a0, a1}, c))
                return false;
        }
    }
    return true;
}

nlohmann::json to_json (const RealizabilityVerdict &v)
{
    nlohmann::json j;
    j["verdict"] = to_string (v.kind);
    j["domain_size"] = v.domain_size;
    j["cells_checked"] = v.cells_checked;
    j["cells_assumed_unreachable"] = v.cells_assumed_unreachable;
    j["wall_ms"] = v.wall_ms;
    if (v.witness)
    {
        const Counterexample &w = *v.witness;
        auto &o = j["witness"];
        o["pose_cell"] = {w.pose_cell.ix, w.pose_cell.iy, w.pose_cell.ir};
        o["class"] = {{"turn", to_string (w.cls.turn)},
                      {"right_trigger", w.cls.right_trigger},
                      {"left_trigger", w.cls.left_trigger},
                      {"front_rung", w.cls.front_rung},
                      {"rear_rung", w.cls.rear_rung}};
        o["lidar"] = w.observation.lidar;
        o["pose"] = {w.observation.pose.x, w.observation.pose.y, w.observation.pose.r};
        auto &hist = o["history"] = nlohmann::json::array ();
        for (const auto &e : w.history)
            hist.push_back ({{"pose", {e.pose.x, e.pose.y, e.pose.r}},
                             {"action", {e.action.a0, e.action.a1}},
                             {"pose_cell", {e.cells.pose.ix, e.cells.pose.iy, e.cells.pose.ir}},
                             {"action_cell", {e.cells.action.i0, e.cells.action.i1}}});
        o["constraints"] = w.constraints;
    }
    return j;
}

} // namespace pshield
