#include <pshield/harness/experiment.hpp>
#include <pshield/harness/unsat_matrix.hpp>

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pshield;
using Catch::Approx;
namespace fs = std::filesystem;

namespace
{

std::string slurp (const fs::path &p)
{
    std::ifstream in (p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf ();
    return s.str ();
}

ExperimentConfig small_run (const std::string &policy)
{
    ExperimentConfig cfg;
    cfg.policy = policy;
    cfg.seeds = {0, 1};
    cfg.episodes = 3;
    cfg.nav.horizon = 80;
    return cfg;
}

} // namespace

TEST_CASE ("config survives a JSON round trip", "[harness]")
{
    ExperimentConfig cfg;
    cfg.policy = "unsafe";
    cfg.shield.queue_length = 7;
    cfg.shield.action_cells = 5;
    cfg.shield.solver.timeout_ms = 12.5;
    cfg.thresholds.margin = 0.02;
    cfg.nav.horizon = 123;
    cfg.nav.geometry.lidar_range = 0.4;
    cfg.particle.d_min = 0.12;
    cfg.seeds = {9, 8};
    cfg.episodes = 4;
    cfg.trajectories = true;
    apply_regime (cfg, "loop");

    const nlohmann::json j = to_json (cfg);
    const ExperimentConfig back = config_from_json (j);
    CHECK (to_json (back) == j);
    CHECK (back.shield.queue_length == 7);
    CHECK (back.nav.geometry.lidar_range == 0.4);
    CHECK (regime_name (back) == "loop");

    // a partial file keeps the defaults
    const ExperimentConfig partial = config_from_json (nlohmann::json::parse (R"({"experiment": {"episodes": 2}})"));
    CHECK (partial.episodes == 2);
    CHECK (partial.shield.queue_length == ExperimentConfig{}.shield.queue_length);
}

TEST_CASE ("unknown or invalid config entries are rejected", "[harness]")
{
    CHECK_THROWS_AS (config_from_json (nlohmann::json::parse (R"({"bogus": 1})")), std::invalid_argument);
    CHECK_THROWS_AS (config_from_json (nlohmann::json::parse (R"({"shield": {"bogus": 1}})")), std::invalid_argument);
    CHECK_THROWS (config_from_json (nlohmann::json::parse (R"({"experiment": {"episodes": "many"}})")));

    ExperimentConfig cfg;
    cfg.environment = "ocean";
    CHECK_THROWS_AS (cfg.validate (), std::invalid_argument);
    cfg = {};
    cfg.episodes = -1;
    CHECK_THROWS_AS (cfg.validate (), std::invalid_argument);
    cfg = {};
    CHECK_THROWS_AS (apply_regime (cfg, "sideways"), std::invalid_argument);
    CHECK_THROWS (load_config ("/nonexistent/config.json"));
}

TEST_CASE ("regime names select the shield flags", "[harness]")
{
    for (const std::string r : {"none", "collision", "loop", "optimizer"})
    {
        ExperimentConfig cfg;
        apply_regime (cfg, r);
        CHECK (regime_name (cfg) == r);
        CHECK (cfg.shielded == (r != "none"));
    }
    ExperimentConfig cfg;
    apply_regime (cfg, "collision");
    CHECK_FALSE (cfg.shield.loop);
    CHECK_FALSE (cfg.shield.optimizer);
    apply_regime (cfg, "optimizer");
    CHECK (cfg.shield.loop);
    CHECK (cfg.shield.optimizer);
}

TEST_CASE ("aggregate statistics match a direct computation", "[harness]")
{
    std::vector<SeedMetrics> seeds (3);
    const int succ[] = {5, 7, 9}, coll[] = {3, 1, 0};
    for (int i = 0; i < 3; ++i)
    {
        seeds[i].seed = i;
        seeds[i].episodes = 10;
        seeds[i].successes = succ[i];
        seeds[i].collisions = coll[i];
        seeds[i].timeouts = 10 - succ[i] - coll[i];
        seeds[i].steps = 100;
        seeds[i].interventions = 10 * i;
    }
    seeds[2].unsat_episodes = 2;
    const MetricsReport r = aggregate (seeds);
    REQUIRE (r.success_mean);
    CHECK (*r.success_mean == Approx (0.7));
    CHECK (*r.success_std == Approx (std::sqrt ((0.04 + 0.0 + 0.04) / 3.0)));
    CHECK (*r.collision_mean == Approx (4.0 / 30.0));
    CHECK (r.unsat_total == 2);
    CHECK (*r.intervention_rate == Approx (30.0 / 300.0));
    CHECK (*r.mean_steps == Approx (10.0));

    SeedMetrics empty;
    CHECK_FALSE (empty.success_rate ());
    const MetricsReport none = aggregate ({empty});
    CHECK_FALSE (none.success_mean);
    CHECK_FALSE (none.collision_mean);
    const nlohmann::json j = to_json (none);
    CHECK (j["success_mean"].is_null ());
}

TEST_CASE ("zero episodes give null rates", "[harness]")
{
    ExperimentConfig cfg = small_run ("expert");
    cfg.episodes = 0;
    const MetricsReport r = run_experiment (cfg);
    CHECK (r.seeds.size () == 2);
    CHECK_FALSE (r.success_mean);
    CHECK (to_json (r)["collision_mean"].is_null ());
}

TEST_CASE ("runs are reproducible byte for byte", "[harness]")
{
    const fs::path root = fs::temp_directory_path () / "pshield_harness_test";
    fs::remove_all (root);

    ExperimentConfig cfg = small_run ("unsafe");
    apply_regime (cfg, "optimizer");
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 4u})
    {
        cfg.threads = threads;
        cfg.output_dir = (root / std::to_string (threads)).string ();
        std::vector<EpisodeRecord> records;
        const MetricsReport r = run_experiment (cfg, &records);
        REQUIRE (records.size () == 6);
        CHECK (records.front ().seed == derive_seed (0, 0));
        CHECK (r.seeds.size () == 2);
        int episodes = 0;
        for (const auto &s : r.seeds)
            episodes += s.episodes;
        CHECK (episodes == 6);
        outputs.push_back (slurp (fs::path (cfg.output_dir) / "episodes.jsonl"));
        CHECK (fs::exists (fs::path (cfg.output_dir) / "report.json"));

        for (const auto &rec : records)
            CHECK (to_json (episode_from_json (to_json (rec))) == to_json (rec));
    }
    REQUIRE_FALSE (outputs[0].empty ());
    CHECK (outputs[0] == outputs[1]);
    fs::remove_all (root);
}

TEST_CASE ("particle experiments report separation violations as collisions", "[harness]")
{
    ExperimentConfig cfg;
    cfg.environment = "particle";
    cfg.policy = "goal";
    cfg.seeds = {0};
    cfg.episodes = 5;
    const MetricsReport r = run_experiment (cfg);
    REQUIRE (r.collision_mean);
    CHECK (*r.collision_mean == 0.0);
}

TEST_CASE ("unsat matrix predicates", "[harness]")
{
    UnsatMatrix m;
    m.queue_lengths = {1, 13};
    m.action_cells = {3, 30};
    auto cell = [] (std::size_t lq, int ga, int unsat, RealizabilityVerdict::Kind k) {
        UnsatCell c;
        c.queue_length = lq;
        c.action_cells = ga;
        c.episodes = 10;
        c.unsat_episodes = unsat;
        c.verdict = k;
        if (k == RealizabilityVerdict::Kind::Unrealizable)
            c.confirmed = true;
        return c;
    };
    using K = RealizabilityVerdict::Kind;
    m.cells = {cell (1, 3, 2, K::Unrealizable), cell (1, 30, 0, K::Realizable), cell (13, 3, 5, K::Unrealizable), cell (13, 30, 1, K::Unrealizable)};
    CHECK (m.ordered ());
    CHECK (m.consistent ());
    const std::string text = render (m);
    CHECK (text.find ("R") != std::string::npos);
    CHECK (text.find ("U") != std::string::npos);
    CHECK (to_json (m)["ordered"] == true);

    m.cells[3].unsat_episodes = 6; // rises along the row
    CHECK_FALSE (m.ordered ());
    m.cells[3].unsat_episodes = 1;
    m.cells[1].unsat_episodes = 1; // realizable cell with unsat
    CHECK_FALSE (m.consistent ());
    m.cells[1].unsat_episodes = 0;
    m.cells[2].confirmed = false;
    CHECK_FALSE (m.consistent ());
}

TEST_CASE ("a small unsat matrix run is consistent", "[harness]")
{
    UnsatMatrixConfig cfg;
    cfg.base = small_run ("unsafe");
    cfg.base.seeds = {0};
    cfg.queue_lengths = {1, 13};
    cfg.action_cells = {5, 30};
    const UnsatMatrix m = run_unsat_matrix (cfg);
    REQUIRE (m.cells.size () == 4);
    for (const auto &c : m.cells)
    {
        CHECK (c.episodes == 3);
        CHECK (c.verdict);
    }
    CHECK (m.at (0, 0).verdict == RealizabilityVerdict::Kind::Realizable);
    CHECK (m.consistent ());
}
