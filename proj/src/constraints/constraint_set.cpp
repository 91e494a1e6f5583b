#include <pshield/constraints/constraint_set.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pshield
{

std::string to_string (TurnBound t)
{
    switch (t)
    {
    case TurnBound::None: return "none";
    case TurnBound::A1LeqZero: return "a1<=0";
    case TurnBound::A1GeqZero: return "a1>=0";
    case TurnBound::A1EqZero: return "a1=0";
    }
    return "?";
}

Interval ConstraintSet::turn_interval () const
{
    Interval iv{-a1_limit, a1_limit};
    if (turn == TurnBound::A1LeqZero || turn == TurnBound::A1EqZero)
        iv.hi = 0.0;
    if (turn == TurnBound::A1GeqZero || turn == TurnBound::A1EqZero)
        iv.lo = 0.0;
    return iv;
}

namespace
{

// Cap from one return in the direction given by sign (+1 forward, -1 backward).
// A return inside the lateral band caps translation by its distance beyond the body edge.
// A return beside the body only counts if the same beam would enter the band ahead of
// the edge further out, which keeps the cap monotone in the reading.
double beam_cap (const ConstraintSet &c, const BeamReading &b, double a1, double sign)
{
    constexpr double none = std::numeric_limits<double>::infinity ();
    const double th = b.theta - a1;
    const double along = sign * std::sin (th);
    if (along <= 0.0)
        return none;
    const double across = std::fabs (std::cos (th));
    const double band = c.band + std::fabs (b.origin_u * std::sin (a1));
    if (b.range * across > band)
        return none;
    const double edge = c.half_length - sign * b.origin_u * std::cos (a1);
    const double l_edge = edge / along;
    if (b.range < l_edge)
        return l_edge * across <= band ? 0.0 : none;
    return b.range * along - edge - c.clearance - c.safety;
}

double cap (const ConstraintSet &c, double a1, double sign)
{
    double out = c.a0_limit;
    for (const auto &b : c.beams)
        out = std::min (out, beam_cap (c, b, a1, sign));
    return std::max (0.0, out);
}

} // namespace

double ConstraintSet::forward_cap (double a1) const { return cap (*this, a1, 1.0); }
double ConstraintSet::backward_cap (double a1) const { return cap (*this, a1, -1.0); }

Interval ConstraintSet::translation_interval (double a1) const
{
    Interval iv{-backward_cap (a1), forward_cap (a1)};
    for (const auto &h : half_planes)
    {
        const double rhs = h.c - h.n1 * a1;
        if (h.n0 == 0.0)
        {
            if (rhs > 0.0)
                return {};
        }
        else if (h.n0 > 0.0)
            iv.lo = std::max (iv.lo, rhs / h.n0);
        else
            iv.hi = std::min (iv.hi, rhs / h.n0);
    }
    return iv;
}

bool ConstraintSet::cell_excluded (const ActionCell &cell) const { return std::find (excluded.begin (), excluded.end (), cell) != excluded.end (); }

bool satisfies (const Action &a, const ConstraintSet &c)
{
    if (!(std::fabs (a.a0) <= c.a0_limit && std::fabs (a.a1) <= c.a1_limit))
        return false;
    const Interval turn = c.turn_interval ();
    if (a.a1 < turn.lo || a.a1 > turn.hi)
        return false;
    if (a.a0 > 0.0 && a.a0 > c.forward_cap (a.a1))
        return false;
    if (a.a0 < 0.0 && -a.a0 > c.backward_cap (a.a1))
        return false;
    for (const auto &h : c.half_planes)
        if (h.n0 * a.a0 + h.n1 * a.a1 < h.c)
            return false;
    if (!c.excluded.empty () && c.cell_excluded (c.grid.action_cell (a)))
        return false;
    return true;
}

nlohmann::json to_json (const ConstraintSet &c)
{
    nlohmann::json j;
    j["a0_limit"] = c.a0_limit;
    j["a1_limit"] = c.a1_limit;
    j["safety"] = c.safety;
    j["clearance"] = c.clearance;
    j["turn"] = to_string (c.turn);
    j["half_length"] = c.half_length;
    j["band"] = c.band;
    j["forward_cap_at_0"] = c.forward_cap (0.0);
    j["backward_cap_at_0"] = c.backward_cap (0.0);
    auto &beams = j["beams"] = nlohmann::json::array ();
    for (const auto &b : c.beams)
        beams.push_back ({{"theta", b.theta}, {"range", b.range}, {"origin_u", b.origin_u}});
    auto &hp = j["half_planes"] = nlohmann::json::array ();
    for (const auto &h : c.half_planes)
        hp.push_back ({{"n0", h.n0}, {"n1", h.n1}, {"c", h.c}});
    j["action_cells"] = c.grid.action_cells;
    if (c.pose_cell)
        j["pose_cell"] = {c.pose_cell->ix, c.pose_cell->iy, c.pose_cell->ir};
    auto &ex = j["excluded"] = nlohmann::json::array ();
    for (const auto &e : c.excluded)
        ex.push_back ({e.i0, e.i1});
    return j;
}

} // namespace pshield
