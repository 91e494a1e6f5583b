#include <pshield/harness/config.hpp>
#include <pshield/envs/policies.hpp>

#include <fstream>
#include <stdexcept>

namespace pshield
{

namespace
{

using nlohmann::json;

const json &section (const json &j, const char *name, std::initializer_list<const char *> keys)
{
    static const json empty = json::object ();
    if (!j.contains (name))
        return empty;
    const json &s = j.at (name);
    if (!s.is_object ())
        throw std::invalid_argument (std::string ("config section '") + name + "' must be an object");
    for (const auto &[k, v] : s.items ())
    {
        bool known = false;
        for (const char *key : keys)
            known = known || k == key;
        if (!known)
            throw std::invalid_argument (std::string ("unknown key '") + k + "' in section '" + name + "'");
    }
    return s;
}

template <class T> void read (const json &s, const char *key, T &out)
{
    if (s.contains (key))
        out = s.at (key).get<T> ();
}

} // namespace

void ExperimentConfig::validate () const
{
    if (environment != "nav" && environment != "particle")
        throw std::invalid_argument ("unknown environment '" + environment + "'");
    if (environment == "nav")
        make_policy (policy, nav.geometry);
    else if (policy != "goal")
        throw std::invalid_argument ("the particle environment only has the 'goal' policy");
    if (seeds.empty ())
        throw std::invalid_argument ("at least one seed is required");
    if (episodes < 0)
        throw std::invalid_argument ("episodes per seed must be non-negative");
    if (nav.horizon < 1 || particle.horizon < 1)
        throw std::invalid_argument ("horizon must be positive");
    nav.geometry.validate ();
    shield.validate ();
    particle.validate ();
}

void apply_regime (ExperimentConfig &cfg, const std::string &regime)
{
    ShieldConfig &s = cfg.shield;
    if (regime == "none")
        cfg.shielded = false;
    else if (regime == "collision")
    {
        cfg.shielded = true;
        s.collision = true;
        s.loop = false;
        s.optimizer = false;
    }
    else if (regime == "loop")
    {
        cfg.shielded = true;
        s.collision = s.loop = true;
        s.optimizer = false;
    }
    else if (regime == "optimizer")
    {
        cfg.shielded = true;
        s.collision = s.loop = s.optimizer = true;
    }
    else
        throw std::invalid_argument ("unknown regime '" + regime + "' (none, collision, loop, optimizer)");
}

std::string regime_name (const ExperimentConfig &cfg)
{
    if (!cfg.shielded)
        return "none";
    if (!cfg.shield.loop)
        return "collision";
    return cfg.shield.optimizer ? "optimizer" : "loop";
}

ExperimentConfig config_from_json (const json &j, ExperimentConfig c)
{
    if (!j.is_object ())
        throw std::invalid_argument ("config must be a JSON object");
    for (const auto &[k, v] : j.items ())
        if (k != "geometry" && k != "thresholds" && k != "solver" && k != "shield" && k != "environment" && k != "experiment")
            throw std::invalid_argument ("unknown config section '" + k + "'");

    RobotGeometry &g = c.nav.geometry;
    const json &geo = section (j, "geometry", {"width", "length", "front_offset", "back_offset", "max_translation", "max_rotation", "lidar_range", "beams"});
    read (geo, "width", g.width);
    read (geo, "length", g.length);
    read (geo, "front_offset", g.front_offset);
    read (geo, "back_offset", g.back_offset);
    read (geo, "max_translation", g.max_translation);
    read (geo, "max_rotation", g.max_rotation);
    read (geo, "lidar_range", g.lidar_range);
    if (geo.contains ("beams"))
        g.beam_angles = RobotGeometry::default_beams (geo.at ("beams").get<std::size_t> ());

    const json &th = section (j, "thresholds", {"sweep_step", "margin", "spread", "gap_samples", "gap_margin"});
    read (th, "sweep_step", c.thresholds.sweep_step);
    read (th, "margin", c.thresholds.margin);
    read (th, "spread", c.thresholds.spread);
    read (th, "gap_samples", c.thresholds.gap_samples);
    read (th, "gap_margin", c.thresholds.gap_margin);

    const json &so = section (j, "solver", {"eps0", "eps1", "timeout_ms", "refine_iterations"});
    read (so, "eps0", c.shield.solver.eps0);
    read (so, "eps1", c.shield.solver.eps1);
    read (so, "timeout_ms", c.shield.solver.timeout_ms);
    read (so, "refine_iterations", c.shield.solver.refine_iterations);

    const json &sh = section (j, "shield", {"regime", "queue_length", "pose_cells", "action_cells", "check_history", "safety", "clearance",
                                            "band_margin", "gap_samples", "same_obstacle"});
    if (sh.contains ("regime"))
        apply_regime (c, sh.at ("regime").get<std::string> ());
    read (sh, "queue_length", c.shield.queue_length);
    read (sh, "pose_cells", c.shield.pose_cells);
    read (sh, "action_cells", c.shield.action_cells);
    read (sh, "check_history", c.shield.check_history);
    read (sh, "safety", c.shield.constraints.safety);
    read (sh, "clearance", c.shield.constraints.clearance);
    read (sh, "band_margin", c.shield.constraints.band_margin);
    read (sh, "gap_samples", c.shield.constraints.gap_samples);
    read (sh, "same_obstacle", c.shield.constraints.same_obstacle);

    const json &env = section (j, "environment", {"id", "horizon", "world", "min_obstacles", "max_obstacles", "min_gap", "particle_d_min", "particle_v_max"});
    read (env, "id", c.environment);
    if (env.contains ("horizon"))
        c.nav.horizon = c.particle.horizon = env.at ("horizon").get<int> ();
    read (env, "world", c.world_file);
    read (env, "min_obstacles", c.nav.world.min_obstacles);
    read (env, "max_obstacles", c.nav.world.max_obstacles);
    read (env, "min_gap", c.nav.world.min_gap);
    read (env, "particle_d_min", c.particle.d_min);
    read (env, "particle_v_max", c.particle.v_max);

    const json &ex = section (j, "experiment", {"policy", "seeds", "episodes", "output_dir", "trajectories", "threads"});
    read (ex, "policy", c.policy);
    read (ex, "seeds", c.seeds);
    read (ex, "episodes", c.episodes);
    read (ex, "output_dir", c.output_dir);
    read (ex, "trajectories", c.trajectories);
    read (ex, "threads", c.threads);
    return c;
}

ExperimentConfig load_config (const std::string &path)
{
    std::ifstream in (path);
    if (!in)
        throw std::invalid_argument ("cannot open config '" + path + "'");
    json j;
    try
    {
        j = json::parse (in);
    }
    catch (const json::exception &e)
    {
        throw std::invalid_argument ("config '" + path + "': " + e.what ());
    }
    return config_from_json (j);
}

json to_json (const ExperimentConfig &c)
{
    const RobotGeometry &g = c.nav.geometry;
    const ShieldConfig &s = c.shield;
    json j;
    j["geometry"] = {{"width", g.width},
                     {"length", g.length},
                     {"front_offset", g.front_offset},
                     {"back_offset", g.back_offset},
                     {"max_translation", g.max_translation},
                     {"max_rotation", g.max_rotation},
                     {"lidar_range", g.lidar_range},
                     {"beams", g.beam_count ()}};
    j["thresholds"] = {{"sweep_step", c.thresholds.sweep_step},
                       {"margin", c.thresholds.margin},
                       {"spread", c.thresholds.spread},
                       {"gap_samples", c.thresholds.gap_samples},
                       {"gap_margin", c.thresholds.gap_margin}};
    j["solver"] = {{"eps0", s.solver.eps0}, {"eps1", s.solver.eps1}, {"timeout_ms", s.solver.timeout_ms}, {"refine_iterations", s.solver.refine_iterations}};
    j["shield"] = {{"regime", regime_name (c)},
                   {"queue_length", s.queue_length},
                   {"pose_cells", s.pose_cells},
                   {"action_cells", s.action_cells},
                   {"check_history", s.check_history},
                   {"safety", s.constraints.safety},
                   {"clearance", s.constraints.clearance},
                   {"band_margin", s.constraints.band_margin},
                   {"gap_samples", s.constraints.gap_samples},
                   {"same_obstacle", s.constraints.same_obstacle}};
    j["environment"] = {{"id", c.environment},
                        {"horizon", c.environment == "nav" ? c.nav.horizon : c.particle.horizon},
                        {"world", c.world_file},
                        {"min_obstacles", c.nav.world.min_obstacles},
                        {"max_obstacles", c.nav.world.max_obstacles},
                        {"min_gap", c.nav.world.min_gap},
                        {"particle_d_min", c.particle.d_min},
                        {"particle_v_max", c.particle.v_max}};
    j["experiment"] = {{"policy", c.policy},
                       {"seeds", c.seeds},
                       {"episodes", c.episodes},
                       {"output_dir", c.output_dir},
                       {"trajectories", c.trajectories},
                       {"threads", c.threads}};
    return j;
}

} // namespace pshield
