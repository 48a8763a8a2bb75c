#include "revgas/integrator.hpp"

#include <cmath>
#include <sstream>

#include "revgas/rng.hpp"

namespace revgas {
namespace {

constexpr std::int64_t kVelLimit = std::int64_t{1} << 50;
constexpr int kPlacementAttemptsPerParticle = 20000;

void check_velocity(std::int64_t v) {
    if (v > kVelLimit || v < -kVelLimit)
        throw OverflowError("velocity exceeds fixed-point range (|v| > 2^50 units)");
}

void apply_half_kick_fixed(ParticleState& s, const SimContext& ctx, CollisionTracker* tracker,
                           Parallelism par, std::vector<Vec2i>& scratch) {
    accumulate_half_impulses(s.pos, ctx, scratch, tracker, par);
    for (std::size_t i = 0; i < s.vel.size(); ++i) {
        s.vel[i].x += scratch[i].x;
        s.vel[i].y += scratch[i].y;
        check_velocity(s.vel[i].x);
        check_velocity(s.vel[i].y);
    }
}

void drift_fixed(ParticleState& s, const SimContext& ctx) {
    const std::int64_t w = ctx.width_i();
    const std::int64_t h = ctx.height_i();
    for (std::size_t i = 0; i < s.pos.size(); ++i) {
        s.pos[i].x += s.vel[i].x;
        s.pos[i].y += s.vel[i].y;
        fold_coordinate(s.pos[i].x, s.vel[i].x, w);
        fold_coordinate(s.pos[i].y, s.vel[i].y, h);
    }
}

void reflect_float(double& x, double& v, double extent) {
    while (x < 0.0 || x > extent) {
        if (x < 0.0) {
            x = -x;
            v = -v;
        } else {
            x = 2.0 * extent - x;
            v = -v;
        }
    }
}

void step_float(ParticleState& s, const SimContext& ctx, CollisionTracker* tracker,
                Parallelism par) {
    static thread_local std::vector<Vec2d> force;
    const double half_dt = 0.5 * ctx.dt();
    accumulate_forces(s.fpos, ctx, force, tracker, par);
    for (std::size_t i = 0; i < s.fvel.size(); ++i) {
        s.fvel[i].x += force[i].x * half_dt;
        s.fvel[i].y += force[i].y * half_dt;
    }
    for (std::size_t i = 0; i < s.fpos.size(); ++i) {
        s.fpos[i].x += s.fvel[i].x * ctx.dt();
        s.fpos[i].y += s.fvel[i].y * ctx.dt();
        reflect_float(s.fpos[i].x, s.fvel[i].x, ctx.box().width);
        reflect_float(s.fpos[i].y, s.fvel[i].y, ctx.box().height);
    }
    accumulate_forces(s.fpos, ctx, force, tracker, par);
    for (std::size_t i = 0; i < s.fvel.size(); ++i) {
        s.fvel[i].x += force[i].x * half_dt;
        s.fvel[i].y += force[i].y * half_dt;
    }
}

} // namespace

void fold_coordinate(std::int64_t& x, std::int64_t& v, std::int64_t extent) {
    // Mirrors sit half a position quantum outside [0, extent-1]; the fold is a
    // bijection on (coordinate, velocity sign).
    const std::int64_t period = 2 * extent;
    std::int64_t u = x % period;
    if (u < 0) u += period;
    if (u < extent) {
        x = u;
    } else {
        x = period - 1 - u;
        v = -v;
    }
}

void step(ParticleState& s, const SimContext& ctx, CollisionTracker* tracker, Parallelism par) {
    if (s.mode == IntegratorKind::FixedReversible) {
        static thread_local std::vector<Vec2i> impulse;
        apply_half_kick_fixed(s, ctx, tracker, par, impulse);
        drift_fixed(s, ctx);
        apply_half_kick_fixed(s, ctx, tracker, par, impulse);
    } else {
        step_float(s, ctx, tracker, par);
    }
    ++s.time_step_index;
}

void step_back(ParticleState& s, const SimContext& ctx, CollisionTracker* tracker,
               Parallelism par) {
    // The update is time-symmetric: conjugating one forward step by velocity
    // reversal yields its exact inverse.
    const std::int64_t target = s.time_step_index - 1;
    reverse_velocities(s);
    step(s, ctx, tracker, par);
    reverse_velocities(s);
    s.time_step_index = target;
}

void reverse_velocities(ParticleState& s) {
    for (auto& v : s.vel) {
        v.x = -v.x;
        v.y = -v.y;
    }
    for (auto& v : s.fvel) {
        v.x = -v.x;
        v.y = -v.y;
    }
}

double total_energy(const ParticleState& s, const SimContext& ctx) {
    double e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Vec2d v = ctx.velocity_of(s, i);
        e += 0.5 * (v.x * v.x + v.y * v.y);
    }
    return e + potential_energy(s, ctx);
}

ParticleState init_state(const SimConfig& config, std::uint64_t seed) {
    SimContext ctx = SimContext::from_config(config);
    const Rect& region = config.box.initial_region;
    const double r = config.particle_radius;
    const double lo_x = region.x0 + r, hi_x = region.x1 - r;
    const double lo_y = region.y0 + r, hi_y = region.y1 - r;
    const std::int64_t n = config.n_particles;

    auto packing_error = [&](const char* why) {
        std::ostringstream msg;
        msg << "cannot place " << n << " disks of radius " << r << " in region ["
            << region.x0 << "," << region.x1 << ")x[" << region.y0 << "," << region.y1
            << "): " << why;
        return PackingError(msg.str());
    };
    if (lo_x > hi_x || lo_y > hi_y) throw packing_error("region smaller than one disk");

    Pcg32 place = make_rng(seed, RngStream::Placement);
    const double min_sep2 = 4.0 * r * r;

    std::vector<Vec2i> pos;
    pos.reserve(static_cast<std::size_t>(n));
    std::int64_t attempts_left = kPlacementAttemptsPerParticle * n;
    while (static_cast<std::int64_t>(pos.size()) < n) {
        if (attempts_left-- <= 0)
            throw packing_error("rejection sampling exhausted its attempt budget (packing limit)");
        double x = place.uniform(lo_x, hi_x);
        double y = place.uniform(lo_y, hi_y);
        Vec2i cand{ctx.to_pos_units(x), ctx.to_pos_units(y)};
        bool ok = true;
        for (const Vec2i& p : pos) {
            double dx = ctx.from_pos_units(cand.x - p.x);
            double dy = ctx.from_pos_units(cand.y - p.y);
            if (dx * dx + dy * dy < min_sep2) {
                ok = false;
                break;
            }
        }
        if (ok) pos.push_back(cand);
    }

    // isotropic Maxwell velocities with the configured mean speed
    Pcg32 vels = make_rng(seed, RngStream::Velocities);
    const double sigma = config.mean_speed * std::sqrt(2.0 / 3.14159265358979323846);
    std::vector<Vec2i> vel;
    vel.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        double vx = sigma * vels.normal();
        double vy = sigma * vels.normal();
        vel.push_back(Vec2i{ctx.to_vel_units(vx), ctx.to_vel_units(vy)});
    }

    ParticleState s;
    s.mode = config.mode;
    s.time_step_index = 0;
    if (config.mode == IntegratorKind::FixedReversible) {
        s.pos = std::move(pos);
        s.vel = std::move(vel);
    } else {
        // same quantized values, so both modes start from identical microstates
        s.fpos.reserve(pos.size());
        s.fvel.reserve(vel.size());
        for (const auto& p : pos) s.fpos.push_back({ctx.from_pos_units(p.x), ctx.from_pos_units(p.y)});
        for (const auto& v : vel) s.fvel.push_back({ctx.from_vel_units(v.x), ctx.from_vel_units(v.y)});
    }
    return s;
}

} // namespace revgas
