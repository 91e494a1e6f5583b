#include <pshield/harness/unsat_matrix.hpp>
#include <pshield/harness/experiment.hpp>

#include <cstdio>
#include <sstream>

namespace pshield
{

bool UnsatMatrix::ordered () const
{
    for (std::size_t r = 0; r < queue_lengths.size (); ++r)
        for (std::size_t c = 0; c < action_cells.size (); ++c)
        {
            if (r > 0 && at (r, c).unsat_episodes < at (r - 1, c).unsat_episodes)
                return false;
            if (c > 0 && at (r, c).unsat_episodes > at (r, c - 1).unsat_episodes)
                return false;
        }
    return true;
}

bool UnsatMatrix::consistent () const
{
    for (const auto &cell : cells)
    {
        if (cell.verdict == RealizabilityVerdict::Kind::Realizable && cell.unsat_episodes > 0)
            return false;
        if (cell.confirmed && !*cell.confirmed)
            return false;
    }
    return true;
}

UnsatMatrix run_unsat_matrix (const UnsatMatrixConfig &cfg)
{
    UnsatMatrix m;
    m.queue_lengths = cfg.queue_lengths;
    m.action_cells = cfg.action_cells;
    for (std::size_t lq : cfg.queue_lengths)
        for (int ga : cfg.action_cells)
        {
            ExperimentConfig e = cfg.base;
            e.shielded = true;
            e.shield.loop = true;
            e.shield.queue_length = lq;
            e.shield.action_cells = ga;
            e.output_dir.clear ();

            UnsatCell cell;
            cell.queue_length = lq;
            cell.action_cells = ga;
            const MetricsReport rep = run_experiment (e);
            for (const auto &s : rep.seeds)
                cell.episodes += s.episodes;
            cell.unsat_episodes = rep.unsat_total;
            if (cfg.verdicts)
            {
                const RealizabilityVerdict v = check_realizability (e.shield, e.nav.geometry, cfg.domain, 0, e.thresholds);
                cell.verdict = v.kind;
                if (cfg.confirm && v.kind == RealizabilityVerdict::Kind::Unrealizable)
                    cell.confirmed = confirm_counterexample (v, e.shield, e.nav.geometry, e.thresholds);
            }
            m.cells.push_back (cell);
        }
    return m;
}

std::string render (const UnsatMatrix &m)
{
    std::ostringstream out;
    char buf[64];
    out << "L_Q \\ G_A";
    for (int ga : m.action_cells)
    {
        std::snprintf (buf, sizeof buf, "%10d", ga);
        out << buf;
    }
    out << '\n';
    for (std::size_t r = 0; r < m.queue_lengths.size (); ++r)
    {
        std::snprintf (buf, sizeof buf, "%9zu", m.queue_lengths[r]);
        out << buf;
        for (std::size_t c = 0; c < m.action_cells.size (); ++c)
        {
            const UnsatCell &cell = m.at (r, c);
            char mark = '?';
            if (cell.verdict == RealizabilityVerdict::Kind::Realizable)
                mark = 'R';
            else if (cell.verdict == RealizabilityVerdict::Kind::Unrealizable)
                mark = 'U';
            else if (!cell.verdict)
                mark = ' ';
            std::snprintf (buf, sizeof buf, "%8d %c", cell.unsat_episodes, mark);
            out << buf;
        }
        out << '\n';
    }
    return out.str ();
}

nlohmann::json to_json (const UnsatMatrix &m)
{
    nlohmann::json j;
    j["queue_lengths"] = m.queue_lengths;
    j["action_cells"] = m.action_cells;
    auto &cells = j["cells"] = nlohmann::json::array ();
    for (const auto &c : m.cells)
    {
        nlohmann::json cj{{"queue_length", c.queue_length}, {"action_cells", c.action_cells}, {"episodes", c.episodes}, {"unsat_episodes", c.unsat_episodes}};
        cj["verdict"] = c.verdict ? nlohmann::json (to_string (*c.verdict)) : nlohmann::json (nullptr);
        cj["confirmed"] = c.confirmed ? nlohmann::json (*c.confirmed) : nlohmann::json (nullptr);
        cells.push_back (cj);
    }
    j["ordered"] = m.ordered ();
    j["consistent"] = m.consistent ();
    return j;
}

} // namespace pshield
