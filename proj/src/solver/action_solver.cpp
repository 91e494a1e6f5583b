#include <pshield/solver/action_solver.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace pshield
{

std::string to_string (SolveStatus s)
{
    switch (s)
    {
    case SolveStatus::Safe: return "safe";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Timeout: return "timeout";
    }
    return "?";
}

namespace
{

double eps1_of (const ConstraintSet &c, const SolverConfig &cfg) { return cfg.eps1 > 0.0 ? cfg.eps1 : c.a1_limit / 200.0; }
double eps0_of (const ConstraintSet &c, const SolverConfig &cfg) { return cfg.eps0 > 0.0 ? cfg.eps0 : c.a0_limit / 200.0; }

struct Line
{
    double slope, icpt; // a0 = slope * a1 + icpt
};

} // namespace

std::vector<Interval> feasible_translations (const ConstraintSet &c, double a1, const SolverConfig &cfg)
{
    const Interval iv = c.translation_interval (a1);
    if (iv.empty ())
        return {};
    std::vector<Interval> pieces{iv};
    if (c.excluded.empty ())
        return pieces;

    const double eta = eps0_of (c, cfg) * 1e-3;
    const int n = c.grid.action_cells;
    const int i1 = cell_index (a1, -c.a1_limit, c.a1_limit, n);
    for (const auto &e : c.excluded)
    {
        if (e.i1 != i1)
            continue;
        const double lo = cell_lower (e.i0, -c.a0_limit, c.a0_limit, n) - eta;
        const double hi = cell_upper (e.i0, -c.a0_limit, c.a0_limit, n) + eta;
        std::vector<Interval> next;
        for (const auto &p : pieces)
        {
            if (p.hi < lo || p.lo > hi)
            {
                next.push_back (p);
                continue;
            }
            if (p.lo < lo)
                next.push_back ({p.lo, lo});
            if (p.hi > hi)
                next.push_back ({hi, p.hi});
        }
        pieces = std::move (next);
    }
    return pieces;
}

std::vector<double> rotation_candidates (const ConstraintSet &c, const SolverConfig &cfg)
{
    const Interval ti = c.turn_interval ();
    if (ti.empty ())
        return {};
    const double eps1 = eps1_of (c, cfg);
    const double d = c.safety;
    std::vector<double> out;
    for (double a = ti.lo; a < ti.hi; a += eps1)
        out.push_back (a);
    out.push_back (ti.hi);
    out.push_back (0.0);

    auto near = [&] (double b) {
        out.push_back (b);
        out.push_back (b - d);
        out.push_back (b + d);
    };
    for (const auto &e : c.excluded)
    {
        double a0lo, a0hi, a1lo, a1hi;
        c.grid.action_bounds (e, a0lo, a0hi, a1lo, a1hi);
        near (a1lo);
        near (a1hi);
    }

    if (!c.half_planes.empty ())
    {
        std::vector<Line> lines{{0.0, c.a0_limit}, {0.0, -c.a0_limit}};
        for (const auto &h : c.half_planes)
        {
            if (h.n0 != 0.0)
                lines.push_back ({-h.n1 / h.n0, h.c / h.n0});
            else if (h.n1 != 0.0)
                near (h.c / h.n1);
        }
        for (std::size_t i = 0; i < lines.size (); ++i)
            for (std::size_t j = i + 1; j < lines.size (); ++j)
                if (lines[i].slope != lines[j].slope)
                    near ((lines[j].icpt - lines[i].icpt) / (lines[i].slope - lines[j].slope));
    }

    std::erase_if (out, [&] (double a) { return !(a >= ti.lo && a <= ti.hi); });
    std::sort (out.begin (), out.end ());
    out.erase (std::unique (out.begin (), out.end ()), out.end ());
    return out;
}

namespace
{

// Closest admissible translation to target at rotation a1, verified against satisfies.
std::optional<Action> best_at (const ConstraintSet &c, double a1, double target, const SolverConfig &cfg)
{
    std::optional<Action> best;
    double best_d = std::numeric_limits<double>::infinity ();
    const double eta = std::min (eps0_of (c, cfg) * 1e-3, 1e-9);
    for (const auto &p : feasible_translations (c, a1, cfg))
    {
        const double in = std::min (eta, 0.5 * (p.hi - p.lo));
        for (double a0 : {std::clamp (target, p.lo, p.hi), std::clamp (target, p.lo + in, p.hi - in), 0.5 * (p.lo + p.hi)})
        {
            const Action a{a0, a1};
            if (std::fabs (a0 - target) < best_d && satisfies (a, c))
            {
                best = a;
                best_d = std::fabs (a0 - target);
            }
        }
    }
    return best;
}

} // namespace

SolveResult solve_any (const ConstraintSet &c, const SolverConfig &cfg)
{
    for (double a1 : rotation_candidates (c, cfg))
    {
        for (const auto &p : feasible_translations (c, a1, cfg))
        {
            for (double a0 : {0.5 * (p.lo + p.hi), p.lo, p.hi})
            {
                const Action a{a0, a1};
                if (satisfies (a, c))
                    return {SolveStatus::Safe, a};
            }
        }
    }
    return {SolveStatus::Unsat, {}};
}

SolveResult solve_closest (const ConstraintSet &c, const Action &proposal, const SolverConfig &cfg)
{
    if (satisfies (proposal, c))
        return {SolveStatus::Safe, proposal};

    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now () + std::chrono::duration<double, std::milli> (cfg.timeout_ms);

    std::vector<double> cands = rotation_candidates (c, cfg);
    if (cands.empty ())
        return {SolveStatus::Unsat, {}};
    const Interval ti = c.turn_interval ();
    const double p1 = std::clamp (proposal.a1, ti.lo, ti.hi);
    cands.push_back (p1);
    std::sort (cands.begin (), cands.end ());
    cands.erase (std::unique (cands.begin (), cands.end ()), cands.end ());

    std::vector<double> order = cands;
    std::stable_sort (order.begin (), order.end (), [&] (double a, double b) { return std::fabs (a - p1) < std::fabs (b - p1); });

    auto better = [&] (const Action &a, const Action &b) {
        const double da = std::fabs (a.a1 - proposal.a1), db = std::fabs (b.a1 - proposal.a1);
        if (da != db)
            return da < db;
        const double ea = std::fabs (a.a0 - proposal.a0), eb = std::fabs (b.a0 - proposal.a0);
        if (ea != eb)
            return ea < eb;
        return a.a1 < b.a1;
    };

    std::optional<Action> best;
    for (double a1 : order)
    {
        if (clock::now () > deadline)
            return {SolveStatus::Timeout, {}};
        if (best && std::fabs (a1 - p1) > std::fabs (best->a1 - p1))
            break;
        if (auto a = best_at (c, a1, proposal.a0, cfg); a && (!best || better (*a, *best)))
            best = a;
    }
    if (!best)
        return {SolveStatus::Unsat, {}};

    // Every candidate strictly between p1 and the winner was infeasible; bisect toward
    // the nearest of them to land on the feasibility boundary.
    const auto it = std::find (cands.begin (), cands.end (), best->a1);
    double infeasible = p1;
    bool has_neighbour = false;
    if (best->a1 > p1 && it != cands.begin ())
    {
        infeasible = *(it - 1);
        has_neighbour = true;
    }
    else if (best->a1 < p1 && it + 1 != cands.end ())
    {
        infeasible = *(it + 1);
        has_neighbour = true;
    }
    if (has_neighbour && std::fabs (infeasible - p1) < std::fabs (best->a1 - p1))
    {
        double feasible = best->a1;
        Action found = *best;
        for (int k = 0; k < cfg.refine_iterations; ++k)
        {
            if (clock::now () > deadline)
                break;
            const double mid = 0.5 * (feasible + infeasible);
            if (auto a = best_at (c, mid, proposal.a0, cfg))
            {
                feasible = mid;
                found = *a;
            }
            else
                infeasible = mid;
        }
        if (better (found, *best))
            best = found;
    }
    return {SolveStatus::Safe, *best};
}

} // namespace pshield
