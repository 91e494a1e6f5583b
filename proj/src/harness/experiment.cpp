#include <pshield/harness/experiment.hpp>
#include <pshield/envs/policies.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace pshield
{

namespace
{

std::optional<double> rate (int n, int episodes)
{
    if (episodes == 0)
        return std::nullopt;
    return static_cast<double> (n) / episodes;
}

void mean_std (const std::vector<double> &v, std::optional<double> &mean, std::optional<double> &sd)
{
    if (v.empty ())
        return;
    double m = 0.0;
    for (double x : v)
        m += x;
    m /= static_cast<double> (v.size ());
    double var = 0.0;
    for (double x : v)
        var += (x - m) * (x - m);
    mean = m;
    sd = std::sqrt (var / static_cast<double> (v.size ()));
}

nlohmann::json opt (const std::optional<double> &v) { return v ? nlohmann::json (*v) : nlohmann::json (nullptr); }

struct Task
{
    std::size_t seed_index = 0;
    int episode = 0;
};

struct TaskResult
{
    Outcome outcome = Outcome::Timeout;
    int steps = 0;
    int unsat = 0;
    int interventions = 0;
    double latency_ms = 0.0;
    std::optional<EpisodeRecord> record;
    nlohmann::json particle;
};

std::ofstream open_out (const std::filesystem::path &p)
{
    std::ofstream out (p);
    if (!out)
        throw std::runtime_error ("cannot write '" + p.string () + "'");
    return out;
}

} // namespace

std::optional<double> SeedMetrics::success_rate () const { return rate (successes, episodes); }
std::optional<double> SeedMetrics::collision_rate () const { return rate (collisions, episodes); }
std::optional<double> SeedMetrics::timeout_rate () const { return rate (timeouts, episodes); }

MetricsReport aggregate (std::vector<SeedMetrics> seeds)
{
    MetricsReport r;
    r.seeds = std::move (seeds);
    std::vector<double> succ, coll, tout;
    long steps = 0, interventions = 0, episodes = 0;
    double latency = 0.0;
    for (const auto &s : r.seeds)
    {
        if (s.episodes > 0)
        {
            succ.push_back (*s.success_rate ());
            coll.push_back (*s.collision_rate ());
            tout.push_back (*s.timeout_rate ());
        }
        r.unsat_total += s.unsat_episodes;
        steps += s.steps;
        interventions += s.interventions;
        episodes += s.episodes;
        latency += s.latency_ms;
    }
    mean_std (succ, r.success_mean, r.success_std);
    mean_std (coll, r.collision_mean, r.collision_std);
    std::optional<double> unused;
    mean_std (tout, r.timeout_mean, unused);
    if (steps > 0)
    {
        r.intervention_rate = static_cast<double> (interventions) / steps;
        r.mean_latency_ms = latency / steps;
    }
    if (episodes > 0)
        r.mean_steps = static_cast<double> (steps) / episodes;
    return r;
}

MetricsReport run_experiment (const ExperimentConfig &cfg) { return run_experiment (cfg, nullptr); }

MetricsReport run_experiment (const ExperimentConfig &cfg, std::vector<EpisodeRecord> *records)
{
    cfg.validate ();
    const bool nav = cfg.environment == "nav";
    std::optional<Shield> shield;
    if (nav && cfg.shielded)
        shield.emplace (cfg.nav.geometry, cfg.shield, cfg.thresholds);
    std::optional<ObstacleWorld> world;
    if (nav && !cfg.world_file.empty ())
        world = load_world (cfg.world_file);
    const bool keep = records || !cfg.output_dir.empty ();

    std::vector<Task> tasks;
    for (std::size_t s = 0; s < cfg.seeds.size (); ++s)
        for (int e = 0; e < cfg.episodes; ++e)
            tasks.push_back ({s, e});
    std::vector<TaskResult> results (tasks.size ());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        try
        {
            NavEnv env (cfg.nav);
            std::unique_ptr<Policy> policy = nav ? make_policy (cfg.policy, cfg.nav.geometry) : nullptr;
            for (std::size_t i = next++; i < tasks.size () && !failed; i = next++)
            {
                const std::uint64_t seed = derive_seed (cfg.seeds[tasks[i].seed_index], tasks[i].episode);
                TaskResult &r = results[i];
                if (nav)
                {
                    const Shield *sh = shield ? &*shield : nullptr;
                    EpisodeRecord rec = world ? run_episode (*policy, env, sh, cfg.nav.horizon, *world, seed)
                                              : run_episode (*policy, env, sh, cfg.nav.horizon, seed);
                    rec.index = tasks[i].episode;
                    r.outcome = rec.outcome;
                    r.steps = rec.steps;
                    r.unsat = rec.unsat;
                    r.interventions = rec.interventions;
                    r.latency_ms = rec.latency_ms;
                    if (keep)
                        r.record = std::move (rec);
                }
                else
                {
                    const ParticleEpisode p = run_particle_episode (cfg.particle, seed, cfg.shielded);
                    r.outcome = p.violation ? Outcome::Collision : p.success ? Outcome::Success : Outcome::Timeout;
                    r.steps = p.steps;
                    r.unsat = p.unsat;
                    r.interventions = p.interventions;
                    r.particle = {{"seed", seed},         {"index", tasks[i].episode},      {"outcome", to_string (r.outcome)},
                                  {"steps", p.steps},     {"min_distance", std::round (p.min_distance * 1e9) / 1e9},
                                  {"unsat", p.unsat},     {"interventions", p.interventions}};
                }
            }
        }
        catch (...)
        {
            if (!failed.exchange (true))
                failure = std::current_exception ();
        }
    };
    unsigned nt = cfg.threads ? cfg.threads : std::max (1u, std::thread::hardware_concurrency ());
    nt = static_cast<unsigned> (std::min<std::size_t> (nt, std::max<std::size_t> (1, tasks.size ())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back (worker);
    for (auto &t : pool)
        t.join ();
    if (failure)
        std::rethrow_exception (failure);

    std::vector<SeedMetrics> per_seed (cfg.seeds.size ());
    for (std::size_t s = 0; s < cfg.seeds.size (); ++s)
        per_seed[s].seed = cfg.seeds[s];
    for (std::size_t i = 0; i < tasks.size (); ++i)
    {
        SeedMetrics &m = per_seed[tasks[i].seed_index];
        const TaskResult &r = results[i];
        ++m.episodes;
        m.successes += r.outcome == Outcome::Success;
        m.collisions += r.outcome == Outcome::Collision;
        m.timeouts += r.outcome == Outcome::Timeout;
        m.unsat_episodes += r.unsat > 0;
        m.unsat_steps += r.unsat;
        m.interventions += r.interventions;
        m.steps += r.steps;
        m.latency_ms += r.latency_ms;
    }
    MetricsReport report = aggregate (std::move (per_seed));

    if (!cfg.output_dir.empty ())
    {
        namespace fs = std::filesystem;
        const fs::path dir (cfg.output_dir);
        std::error_code ec;
        fs::create_directories (dir, ec);
        if (ec)
            throw std::runtime_error ("cannot create output directory '" + dir.string () + "': " + ec.message ());
        {
            std::ofstream out = open_out (dir / "episodes.jsonl");
            for (const auto &r : results)
                out << (r.record ? to_json (*r.record) : r.particle).dump () << '\n';
        }
        {
            nlohmann::json j = to_json (report);
            j["config"] = to_json (cfg);
            std::ofstream out = open_out (dir / "report.json");
            out << j.dump (2) << '\n';
        }
        if (cfg.trajectories && nav)
        {
            fs::create_directories (dir / "trajectories", ec);
            if (ec)
                throw std::runtime_error ("cannot create trajectory directory: " + ec.message ());
            for (const auto &r : results)
            {
                std::ofstream out = open_out (dir / "trajectories" / ("seed" + std::to_string (r.record->seed) + "_ep" + std::to_string (r.record->index) + ".csv"));
                write_trajectory_csv (out, *r.record);
            }
        }
    }
    if (records)
    {
        records->clear ();
        for (auto &r : results)
            if (r.record)
                records->push_back (std::move (*r.record));
    }
    return report;
}

nlohmann::json to_json (const MetricsReport &r)
{
    nlohmann::json j;
    j["success_mean"] = opt (r.success_mean);
    j["success_std"] = opt (r.success_std);
    j["collision_mean"] = opt (r.collision_mean);
    j["collision_std"] = opt (r.collision_std);
    j["timeout_mean"] = opt (r.timeout_mean);
    j["unsat_total"] = r.unsat_total;
    j["intervention_rate"] = opt (r.intervention_rate);
    j["mean_steps"] = opt (r.mean_steps);
    j["mean_latency_ms"] = opt (r.mean_latency_ms);
    auto &seeds = j["seeds"] = nlohmann::json::array ();
    for (const auto &s : r.seeds)
        seeds.push_back ({{"seed", s.seed},
                          {"episodes", s.episodes},
                          {"successes", s.successes},
                          {"collisions", s.collisions},
                          {"timeouts", s.timeouts},
                          {"unsat_episodes", s.unsat_episodes},
                          {"unsat_steps", s.unsat_steps},
                          {"interventions", s.interventions},
                          {"steps", s.steps}});
    return j;
}

} // namespace pshield
