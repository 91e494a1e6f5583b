#include <pshield/envs/particle_env.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pshield
{

void ParticleConfig::validate () const
{
    if (!(d_min > 0.0) || !(v_max > 0.0) || horizon < 0)
        throw std::invalid_argument ("particle world needs positive d_min and v_max");
    if (!(std::numbers::sqrt2 * v_max < d_min / 2.0))
        throw std::invalid_argument ("particle speed limit too large for the separation distance");
}

ParticleEnv::ParticleEnv (ParticleConfig cfg) : cfg_ (cfg) { cfg_.validate (); }

void ParticleEnv::reset (std::uint64_t seed, bool jitter)
{
    Rng rng (seed);
    const Vec2 centre{0.5, 0.5};
    const double spin = jitter ? rng.uniform (0.0, 2.0 * std::numbers::pi) : 0.0;
    for (std::size_t i = 0; i < particle_agents; ++i)
    {
        const double ang = spin + 2.0 * std::numbers::pi * static_cast<double> (i) / particle_agents;
        const Vec2 dir{std::cos (ang), std::sin (ang)};
        Vec2 off{};
        if (jitter)
            off = {rng.uniform (-cfg_.jitter, cfg_.jitter), rng.uniform (-cfg_.jitter, cfg_.jitter)};
        pos_[i] = centre + dir * cfg_.layout_radius + off;
        target_[i] = centre - dir * cfg_.layout_radius;
    }
}

void ParticleEnv::reset (const std::array<Vec2, particle_agents> &pos, const std::array<Vec2, particle_agents> &target)
{
    pos_ = pos;
    target_ = target;
}

double ParticleEnv::min_distance () const
{
    double d = std::numeric_limits<double>::infinity ();
    for (std::size_t i = 0; i < particle_agents; ++i)
        for (std::size_t j = i + 1; j < particle_agents; ++j)
            d = std::min (d, norm (pos_[i] - pos_[j]));
    return d;
}

bool ParticleEnv::all_arrived () const
{
    for (std::size_t i = 0; i < particle_agents; ++i)
        if (norm (pos_[i] - target_[i]) > cfg_.success_radius)
            return false;
    return true;
}

ParticleStep ParticleEnv::step (const Velocities &v)
{
    for (const auto &vi : v)
        if (!(std::fabs (vi.x) <= cfg_.v_max + 1e-12 && std::fabs (vi.y) <= cfg_.v_max + 1e-12))
            throw std::invalid_argument ("particle velocity exceeds the per-axis limit");
    for (std::size_t i = 0; i < particle_agents; ++i)
        pos_[i] = pos_[i] + v[i];
    ParticleStep s;
    s.min_distance = min_distance ();
    s.violation = s.min_distance < cfg_.d_min;
    s.success = all_arrived ();
    return s;
}

Velocities particle_policy (const ParticleEnv &env, Rng *noise, double noise_std)
{
    constexpr double bias = -0.35; // radians, veer right so crossing agents pass each other
    const double vmax = env.config ().v_max;
    Velocities v{};
    for (std::size_t i = 0; i < particle_agents; ++i)
    {
        const Vec2 d = env.targets ()[i] - env.positions ()[i];
        const double dist = norm (d);
        if (dist < 1e-12)
            continue;
        const double b = dist > 0.15 ? bias : bias * dist / 0.15;
        Vec2 dir = rotate (d * (1.0 / dist), b);
        const double speed = std::min (vmax, dist);
        Vec2 vi = dir * speed;
        if (noise)
            vi = vi + Vec2{noise->normal () * noise_std, noise->normal () * noise_std};
        v[i] = {std::clamp (vi.x, -vmax, vmax), std::clamp (vi.y, -vmax, vmax)};
    }
    return v;
}

ConstraintSet separation_constraints (const ParticleEnv &env, std::size_t i, const Velocities &decided)
{
    const ParticleConfig &cfg = env.config ();
    ConstraintSet c;
    c.a0_limit = cfg.v_max;
    c.a1_limit = cfg.v_max;
    c.safety = cfg.safety;
    c.grid.a0_limit = cfg.v_max;
    c.grid.a1_limit = cfg.v_max;
    for (std::size_t j = 0; j < particle_agents; ++j)
    {
        if (j == i)
            continue;
        const Vec2 d = env.positions ()[i] - env.positions ()[j];
        const double dist = norm (d);
        const Vec2 n = d * (1.0 / dist);
        const double slack = dist - cfg.d_min;
        // n . (v_i - v_j) >= -slack keeps the pair apart after the step
        double rhs;
        if (j < i)
            rhs = -slack + dot (n, decided[j]);
        else
            rhs = -slack / 2.0;
        c.half_planes.push_back ({n.y, n.x, rhs + cfg.safety});
    }
    return c;
}

ParticleShieldResult shield_particles (const ParticleEnv &env, const Velocities &proposal, const SolverConfig &cfg)
{
    ParticleShieldResult r;
    for (std::size_t i = 0; i < particle_agents; ++i)
    {
        const ConstraintSet c = separation_constraints (env, i, r.executed);
        const Action p{proposal[i].y, proposal[i].x};
        SolveResult s = solve_closest (c, p, cfg);
        if (s.status == SolveStatus::Timeout)
            s = solve_any (c, cfg);
        if (s.safe ())
            r.executed[i] = {s.action.a1, s.action.a0};
        else
        {
            ++r.unsat;
            r.executed[i] = {};
        }
        if (!(r.executed[i] == proposal[i]))
            ++r.interventions;
    }
    return r;
}

ParticleEpisode run_particle_episode (const ParticleConfig &cfg, std::uint64_t seed, bool shielded, bool jitter)
{
    ParticleEnv env (cfg);
    env.reset (seed, jitter);
    Rng noise (derive_seed (seed, 1));
    ParticleEpisode ep;
    ep.min_distance = env.min_distance ();
    for (int t = 0; t < cfg.horizon; ++t)
    {
        Velocities v = particle_policy (env, jitter ? &noise : nullptr);
        if (shielded)
        {
            const auto r = shield_particles (env, v);
            v = r.executed;
            ep.interventions += r.interventions;
            ep.unsat += r.unsat;
        }
        const ParticleStep s = env.step (v);
        ++ep.steps;
        ep.min_distance = std::min (ep.min_distance, s.min_distance);
        ep.violation = ep.violation || s.violation;
        if (s.success)
        {
            ep.success = true;
            break;
        }
    }
    return ep;
}

} // namespace pshield
