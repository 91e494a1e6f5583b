#include <pshield/core/episode.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>

namespace pshield
{

EpisodeRecord run_episode (Policy &policy, NavEnv &env, const Shield *shield, int horizon, std::uint64_t seed)
{
    return run_episode (policy, env, shield, horizon, generate_world (env.config ().world, env.config ().geometry, seed), seed);
}

EpisodeRecord run_episode (Policy &policy, NavEnv &env, const Shield *shield, int horizon, const ObstacleWorld &world, std::uint64_t seed)
{
    EpisodeRecord rec;
    rec.seed = seed;
    Observation o = env.reset (world);
    policy.reset (derive_seed (seed, 7));
    ShieldHistory h = shield ? shield->make_history () : ShieldHistory (0);

    for (int t = 0; t < horizon && !env.done (); ++t)
    {
        const Action proposal = policy.act (o);
        StepRecord sr;
        sr.step = t;
        sr.pose = env.pose ();
        if (shield)
            sr.outcome = shield->step (proposal, o, h);
        else
            sr.outcome = {proposal, proposal, false, SolverPath::PassThrough, 0.0};
        const StepResult r = env.step (sr.outcome.executed);
        rec.reward += r.reward;
        rec.unsat += sr.outcome.path == SolverPath::Unsat ? 1 : 0;
        rec.interventions += sr.outcome.intervened ? 1 : 0;
        rec.latency_ms += sr.outcome.latency_ms;
        rec.trace.push_back (sr);
        o = r.observation;
    }
    rec.steps = static_cast<int> (rec.trace.size ());
    rec.outcome = env.done () ? env.outcome () : Outcome::Timeout;
    if (rec.outcome == Outcome::Running)
        rec.outcome = Outcome::Timeout;
    rec.final_pose = env.pose ();
    return rec;
}

namespace
{

double fixed (double v) { return std::round (v * 1e9) / 1e9; }

} // namespace

nlohmann::json to_json (const EpisodeRecord &r)
{
    nlohmann::json j;
    j["seed"] = r.seed;
    j["index"] = r.index;
    j["outcome"] = to_string (r.outcome);
    j["steps"] = r.steps;
    j["reward"] = fixed (r.reward);
    j["unsat"] = r.unsat;
    j["interventions"] = r.interventions;
    j["final_pose"] = {fixed (r.final_pose.x), fixed (r.final_pose.y), fixed (r.final_pose.r)};
    auto &tr = j["trace"] = nlohmann::json::array ();
    for (const auto &s : r.trace)
        tr.push_back ({s.step, fixed (s.pose.x), fixed (s.pose.y), fixed (s.pose.r), fixed (s.outcome.proposal.a0), fixed (s.outcome.proposal.a1),
                       fixed (s.outcome.executed.a0), fixed (s.outcome.executed.a1), s.outcome.intervened, to_string (s.outcome.path)});
    return j;
}

EpisodeRecord episode_from_json (const nlohmann::json &j)
{
    EpisodeRecord r;
    r.seed = j.at ("seed").get<std::uint64_t> ();
    r.index = j.at ("index").get<int> ();
    const std::string oc = j.at ("outcome").get<std::string> ();
    r.outcome = oc == "success" ? Outcome::Success : oc == "collision" ? Outcome::Collision : Outcome::Timeout;
    r.steps = j.at ("steps").get<int> ();
    r.reward = j.at ("reward").get<double> ();
    r.unsat = j.at ("unsat").get<int> ();
    r.interventions = j.at ("interventions").get<int> ();
    const auto &fp = j.at ("final_pose");
    r.final_pose = {fp[0].get<double> (), fp[1].get<double> (), fp[2].get<double> ()};
    for (const auto &row : j.at ("trace"))
    {
        StepRecord s;
        s.step = row[0].get<int> ();
        s.pose = {row[1].get<double> (), row[2].get<double> (), row[3].get<double> ()};
        s.outcome.proposal = {row[4].get<double> (), row[5].get<double> ()};
        s.outcome.executed = {row[6].get<double> (), row[7].get<double> ()};
        s.outcome.intervened = row[8].get<bool> ();
        const std::string p = row[9].get<std::string> ();
        s.outcome.path = p == "optimizer" ? SolverPath::Optimizer
                         : p == "fallback-sol" ? SolverPath::FallbackSol
                         : p == "unsat"        ? SolverPath::Unsat
                                               : SolverPath::PassThrough;
        r.trace.push_back (s);
    }
    return r;
}

void write_trajectory_csv (std::ostream &out, const EpisodeRecord &r)
{
    out << "step,x,y,r,a0,a1,intervened,path\n";
    char buf[256];
    for (const auto &s : r.trace)
    {
        std::snprintf (buf, sizeof buf, "%d,%.9f,%.9f,%.9f,%.9f,%.9f,%d,%s\n", s.step, s.pose.x, s.pose.y, s.pose.r, s.outcome.executed.a0,
                       s.outcome.executed.a1, s.outcome.intervened ? 1 : 0, to_string (s.outcome.path).c_str ());
        out << buf;
    }
}

} // namespace pshield
