// shieldctl: command line front end for the shield library.
//
// Exit codes: 0 success, 1 validation or usage error, 2 unrealizable configuration.

#include <pshield/harness/experiment.hpp>
#include <pshield/harness/unsat_matrix.hpp>
#include <pshield/realizability/checker.hpp>
#include <pshield/spec/fragment.hpp>
#include <pshield/spec/parser.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace pshield;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_unrealizable = 2;

struct Common
{
    std::string config;
    std::optional<std::size_t> lq;
    std::optional<int> ga;
    std::optional<int> gp;

    void add (CLI::App *app)
    {
        app->add_option ("-c,--config", config, "JSON config file")->check (CLI::ExistingFile);
        app->add_option ("--lq", lq, "queue length L_Q");
        app->add_option ("--ga", ga, "action grid cells per axis G_A");
        app->add_option ("--gp", gp, "pose grid cells per axis G_P");
    }

    ExperimentConfig load () const
    {
        ExperimentConfig c = config.empty () ? ExperimentConfig{} : load_config (config);
        if (lq)
            c.shield.queue_length = *lq;
        if (ga)
            c.shield.action_cells = *ga;
        if (gp)
            c.shield.pose_cells = *gp;
        return c;
    }
};

std::string read_file (const std::string &path)
{
    std::ifstream in (path);
    if (!in)
        throw std::invalid_argument ("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf ();
    return ss.str ();
}

void write_file (const std::filesystem::path &path, const std::string &text)
{
    if (path.has_parent_path ())
        std::filesystem::create_directories (path.parent_path ());
    std::ofstream out (path);
    if (!out)
        throw std::runtime_error ("cannot write '" + path.string () + "'");
    out << text;
}

int check_spec (const std::string &path, bool json)
{
    spec::SpecDocument doc;
    try
    {
        doc = spec::parse_spec (read_file (path));
    }
    catch (const spec::SpecError &e)
    {
        std::cerr << path << ':' << e.line () << ':' << e.column () << ": " << e.what () << '\n';
        return exit_invalid;
    }
    const spec::FragmentReport rep = spec::analyse_fragment (doc);
    std::string rewritten;
    if (rep.cls == spec::FragmentClass::Anticipation)
        rewritten = spec::print_spec (spec::rewrite_anticipation (doc));
    else if (rep.cls == spec::FragmentClass::NCS)
        rewritten = spec::print_spec (doc);

    if (json)
    {
        nlohmann::json j{{"file", path}, {"fragment", spec::to_string (rep.cls)}, {"canonical", spec::print_spec (doc)}};
        j["rewritten"] = rewritten.empty () ? nlohmann::json (nullptr) : nlohmann::json (rewritten);
        j["offending_atom"] = rep.offending_atom;
        j["reason"] = rep.reason;
        std::cout << j.dump (2) << '\n';
    }
    else
    {
        std::cout << "fragment: " << spec::to_string (rep.cls) << '\n';
        if (!rep.reason.empty ())
            std::cout << "reason: " << rep.reason << '\n';
        if (!rep.offending_atom.empty ())
            std::cout << "offending atom: " << rep.offending_atom << '\n';
        if (!rewritten.empty ())
            std::cout << "\n" << rewritten;
    }
    return rep.cls == spec::FragmentClass::CrossState ? exit_invalid : exit_ok;
}

int realizability (const Common &common, const AdversarialDomain &domain, std::size_t budget, const std::string &witness_path, bool sweep,
                   int episodes, const std::string &policy, const std::string &out_dir)
{
    ExperimentConfig cfg = common.load ();
    if (sweep)
    {
        UnsatMatrixConfig mc;
        mc.base = cfg;
        mc.base.policy = policy;
        mc.base.seeds = {0};
        mc.base.episodes = episodes;
        mc.domain = domain;
        const UnsatMatrix m = run_unsat_matrix (mc);
        const std::string text = render (m);
        std::cout << text;
        if (!out_dir.empty ())
        {
            write_file (std::filesystem::path (out_dir) / "unsat_matrix.txt", text);
            write_file (std::filesystem::path (out_dir) / "unsat_matrix.json", to_json (m).dump (2) + "\n");
        }
        return m.consistent () ? exit_ok : exit_invalid;
    }

    cfg.shield.validate ();
    const RealizabilityVerdict v = check_realizability (cfg.shield, cfg.nav.geometry, domain, budget, cfg.thresholds);
    nlohmann::json j = to_json (v);
    j["config"] = to_json (cfg)["shield"];
    j["domain"] = {{"ladder_rungs", domain.ladder_rungs}, {"min_span", domain.min_span}, {"feasible_history", domain.feasible_history}};
    if (v.kind == RealizabilityVerdict::Kind::Unrealizable)
    {
        j["confirmed"] = confirm_counterexample (v, cfg.shield, cfg.nav.geometry, cfg.thresholds);
        if (!witness_path.empty ())
        {
            write_file (witness_path, j.dump (2) + "\n");
            std::cerr << "witness written to " << witness_path << '\n';
        }
    }
    nlohmann::json summary = j;
    summary.erase ("witness");
    std::cout << summary.dump (2) << '\n';
    switch (v.kind)
    {
    case RealizabilityVerdict::Kind::Realizable: return exit_ok;
    case RealizabilityVerdict::Kind::Unrealizable: return exit_unrealizable;
    case RealizabilityVerdict::Kind::Unknown: return exit_invalid;
    }
    return exit_invalid;
}

} // namespace

int main (int argc, char **argv)
{
    CLI::App app{"Runtime shield for a lidar robot: specs, realizability, experiments"};
    app.require_subcommand (1);

    auto *cs = app.add_subcommand ("check-spec", "parse, classify and rewrite a .shieldspec file");
    std::string spec_path;
    bool spec_json = false;
    cs->add_option ("file", spec_path, "spec file")->required ()->check (CLI::ExistingFile);
    cs->add_flag ("--json", spec_json, "machine readable output");

    auto *re = app.add_subcommand ("realizability", "check a configuration, or sweep the L_Q x G_A matrix");
    Common re_common;
    re_common.add (re);
    AdversarialDomain domain;
    std::size_t budget = 0;
    std::string witness;
    bool sweep = false;
    int sweep_episodes = 100;
    std::string sweep_out, sweep_policy = "unsafe";
    re->add_option ("--rungs", domain.ladder_rungs, "lidar ladder rungs per class")->check (CLI::PositiveNumber);
    re->add_option ("--min-span", domain.min_span, "smallest reachable free translation span (negative: half the limit)");
    re->add_flag ("--feasible", domain.feasible_history, "only histories a trajectory inside the pose cell can produce");
    re->add_option ("--budget", budget, "cell limit, 0 for none");
    re->add_option ("--witness", witness, "write the verdict with its counterexample to this file");
    re->add_flag ("--sweep", sweep, "run the unsat matrix over {1,13,100} x {3,5,30}");
    re->add_option ("--episodes", sweep_episodes, "episodes per matrix cell")->check (CLI::NonNegativeNumber);
    re->add_option ("--policy", sweep_policy, "policy driving the matrix episodes");
    re->add_option ("--out", sweep_out, "directory for unsat_matrix.txt");

    auto *run = app.add_subcommand ("run", "run an experiment batch");
    Common run_common;
    run_common.add (run);
    std::optional<std::string> policy, regime, env, out, world;
    std::optional<std::vector<std::uint64_t>> seeds;
    std::optional<int> episodes;
    std::optional<unsigned> threads;
    bool quick = false, require_realizable = false, trajectories = false, print_config = false;
    run->add_option ("--policy", policy, "expert, moderate, unsafe (nav) or goal (particle)");
    run->add_option ("--regime", regime, "none, collision, loop or optimizer");
    run->add_option ("--env", env, "nav or particle");
    run->add_option ("--seeds", seeds, "seed list")->delimiter (',');
    run->add_option ("--episodes", episodes, "episodes per seed");
    run->add_option ("--out", out, "output directory");
    run->add_option ("--world", world, "fixed world file")->check (CLI::ExistingFile);
    run->add_option ("--threads", threads, "worker threads");
    run->add_flag ("--quick", quick, "2 seeds x 20 episodes");
    run->add_flag ("--require-realizable", require_realizable, "refuse to run an unrealizable configuration");
    run->add_flag ("--trajectories", trajectories, "write one CSV per episode");
    run->add_flag ("--print-config", print_config, "print the resolved config as JSON and exit");

    auto *rp = app.add_subcommand ("replay", "extract a trajectory CSV from an episodes.jsonl file");
    std::string replay_path, replay_out;
    std::optional<std::uint64_t> replay_seed;
    int replay_line = 0;
    rp->add_option ("file", replay_path, "episodes.jsonl")->required ()->check (CLI::ExistingFile);
    rp->add_option ("--line", replay_line, "zero-based record index")->check (CLI::NonNegativeNumber);
    rp->add_option ("--seed", replay_seed, "pick the record with this episode seed instead");
    rp->add_option ("-o,--out", replay_out, "CSV path, stdout if omitted");

    auto *th = app.add_subcommand ("thresholds", "print the turn threshold table");
    Common th_common;
    th_common.add (th);
    bool th_json = false;
    th->add_flag ("--json", th_json, "machine readable output");

    try
    {
        app.parse (argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit (e);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try
    {
        if (*cs)
            return check_spec (spec_path, spec_json);

        if (*re)
            return realizability (re_common, domain, budget, witness, sweep, sweep_episodes, sweep_policy, sweep_out);

        if (*run)
        {
            ExperimentConfig cfg = run_common.load ();
            if (env)
                cfg.environment = *env;
            if (policy)
                cfg.policy = *policy;
            else if (cfg.environment == "particle")
                cfg.policy = "goal";
            if (regime)
                apply_regime (cfg, *regime);
            if (quick)
            {
                cfg.seeds = {0, 1};
                cfg.episodes = 20;
            }
            if (seeds)
                cfg.seeds = *seeds;
            if (episodes)
                cfg.episodes = *episodes;
            if (out)
                cfg.output_dir = *out;
            if (world)
                cfg.world_file = *world;
            if (threads)
                cfg.threads = *threads;
            cfg.trajectories = cfg.trajectories || trajectories;
            cfg.validate ();
            if (print_config)
            {
                std::cout << to_json (cfg).dump (2) << '\n';
                return exit_ok;
            }
            if (require_realizable && cfg.environment == "nav" && cfg.shielded)
            {
                const RealizabilityVerdict v = check_realizability (cfg.shield, cfg.nav.geometry, {}, 0, cfg.thresholds);
                if (v.kind != RealizabilityVerdict::Kind::Realizable)
                {
                    std::cerr << "configuration is " << to_string (v.kind) << "; refusing to run\n";
                    return exit_unrealizable;
                }
            }
            const MetricsReport rep = run_experiment (cfg);
            nlohmann::json j = to_json (rep);
            j.erase ("seeds");
            j["regime"] = regime_name (cfg);
            j["policy"] = cfg.policy;
            std::cout << j.dump (2) << '\n';
            return exit_ok;
        }

        if (*rp)
        {
            std::ifstream in (replay_path);
            std::string line;
            int idx = 0;
            while (std::getline (in, line))
            {
                if (line.empty ())
                    continue;
                const nlohmann::json j = nlohmann::json::parse (line);
                const bool match = replay_seed ? j.at ("seed").get<std::uint64_t> () == *replay_seed : idx == replay_line;
                ++idx;
                if (!match)
                    continue;
                if (!j.contains ("trace"))
                    throw std::invalid_argument ("record has no trajectory (particle episodes are not replayable)");
                const EpisodeRecord r = episode_from_json (j);
                if (replay_out.empty ())
                    write_trajectory_csv (std::cout, r);
                else
                {
                    std::ostringstream ss;
                    write_trajectory_csv (ss, r);
                    write_file (replay_out, ss.str ());
                }
                return exit_ok;
            }
            std::cerr << "no matching record in " << replay_path << '\n';
            return exit_invalid;
        }

        if (*th)
        {
            const ExperimentConfig cfg = th_common.load ();
            const RobotGeometry &g = cfg.nav.geometry;
            const TurnThresholds t = precompute_turn_thresholds (g, cfg.thresholds);
            if (th_json)
            {
                nlohmann::json j = nlohmann::json::array ();
                for (std::size_t i = 0; i < g.beam_count (); ++i)
                    j.push_back ({{"beam", i},
                                  {"theta", g.beam_angles[i]},
                                  {"origin_u", g.beam_origin_u (i)},
                                  {"right", t.right[i]},
                                  {"left", t.left[i]},
                                  {"gap_right", t.gap_right[i]},
                                  {"gap_left", t.gap_left[i]}});
                std::cout << j.dump (2) << '\n';
            }
            else
            {
                std::printf ("%4s %9s %9s %9s %9s %9s %9s\n", "beam", "theta_deg", "origin_u", "right", "left", "gap_right", "gap_left");
                for (std::size_t i = 0; i < g.beam_count (); ++i)
                    std::printf ("%4zu %9.3f %9.4f %9.4f %9.4f %9.4f %9.4f\n", i, g.beam_angles[i] * 180.0 / std::numbers::pi, g.beam_origin_u (i),
                                 t.right[i], t.left[i], t.gap_right[i], t.gap_left[i]);
            }
            return exit_ok;
        }
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what () << '\n';
        return exit_invalid;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what () << '\n';
        return exit_invalid;
    }
    return exit_ok;
}
