#include "revgas/perturbation.hpp"

#include <cmath>
#include <stdexcept>

#include "revgas/integrator.hpp"
#include "revgas/rng.hpp"

namespace revgas {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void add_coupling_half_impulses(const ParticleState& a, const ParticleState& b,
                                const SimContext& ctxA, const SimContext& ctxB,
                                const CouplingSpec& coupling, std::vector<Vec2i>& impA,
                                std::vector<Vec2i>& impB) {
    const std::size_t na = a.pos.size();
    const std::size_t nb = b.pos.size();
    const std::size_t pairs = std::max(na, nb);
    // impulse = lambda * (x_b - x_a) * dt/2, in velocity integer units
    const double scale = coupling.lambda * 0.5 * ctxA.dt() * static_cast<double>(ctxA.vel_scale());
    for (std::size_t k = 0; k < pairs; ++k) {
        const std::size_t i = k % na;
        const std::size_t j = k % nb;
        double dx = ctxB.from_pos_units(b.pos[j].x) - ctxA.from_pos_units(a.pos[i].x);
        double dy = ctxB.from_pos_units(b.pos[j].y) - ctxA.from_pos_units(a.pos[i].y);
        std::int64_t ix = static_cast<std::int64_t>(std::nearbyint(scale * dx));
        std::int64_t iy = static_cast<std::int64_t>(std::nearbyint(scale * dy));
        impA[i].x += ix;
        impA[i].y += iy;
        impB[j].x -= ix;
        impB[j].y -= iy;
    }
}

void kick_and_check(ParticleState& s, const std::vector<Vec2i>& imp) {
    constexpr std::int64_t kVelLimit = std::int64_t{1} << 50;
    for (std::size_t i = 0; i < s.vel.size(); ++i) {
        s.vel[i].x += imp[i].x;
        s.vel[i].y += imp[i].y;
        if (std::llabs(s.vel[i].x) > kVelLimit || std::llabs(s.vel[i].y) > kVelLimit)
            throw OverflowError("velocity exceeds fixed-point range (|v| > 2^50 units)");
    }
}

void drift_vessel(ParticleState& s, const SimContext& ctx) {
    for (std::size_t i = 0; i < s.pos.size(); ++i) {
        s.pos[i].x += s.vel[i].x;
        s.pos[i].y += s.vel[i].y;
        fold_coordinate(s.pos[i].x, s.vel[i].x, ctx.width_i());
        fold_coordinate(s.pos[i].y, s.vel[i].y, ctx.height_i());
    }
}

} // namespace

ParticleState apply_kick(const ParticleState& s, const PerturbationSpec& spec,
                         const SimContext& ctx) {
    if (spec.epsilon == 0.0) return s;
    ParticleState out = s;
    Pcg32 rng = make_rng(spec.seed, RngStream::KickDirections);

    auto kick_one = [&](std::size_t i) {
        double angle = kTwoPi * rng.uniform01();
        double dvx = spec.epsilon * std::cos(angle);
        double dvy = spec.epsilon * std::sin(angle);
        if (out.mode == IntegratorKind::FixedReversible) {
            out.vel[i].x += ctx.to_vel_units(dvx);
            out.vel[i].y += ctx.to_vel_units(dvy);
        } else {
            out.fvel[i].x += dvx;
            out.fvel[i].y += dvy;
        }
    };

    if (spec.target.has_value()) {
        for (std::size_t i : *spec.target) kick_one(i);
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) kick_one(i);
    }
    return out;
}

void coupled_step(ParticleState& a, ParticleState& b, const SimContext& ctxA,
                  const SimContext& ctxB, const CouplingSpec& coupling, std::int64_t joint_step,
                  CollisionTracker* trackerA, CollisionTracker* trackerB, Parallelism par) {
    if (!coupling.active_at(joint_step)) {
        step(a, ctxA, trackerA, par);
        step(b, ctxB, trackerB, par);
        return;
    }
    if (a.mode != IntegratorKind::FixedReversible || b.mode != IntegratorKind::FixedReversible)
        throw std::invalid_argument("coupled_step requires fixed_reversible mode");
    if (ctxA.dt() != ctxB.dt() || ctxA.vel_scale() != ctxB.vel_scale())
        throw std::invalid_argument("coupled vessels must share dt and fixed_point_scale");

    std::vector<Vec2i> impA, impB;
    accumulate_half_impulses(a.pos, ctxA, impA, trackerA, par);
    accumulate_half_impulses(b.pos, ctxB, impB, trackerB, par);
    add_coupling_half_impulses(a, b, ctxA, ctxB, coupling, impA, impB);
    kick_and_check(a, impA);
    kick_and_check(b, impB);

    drift_vessel(a, ctxA);
    drift_vessel(b, ctxB);

    accumulate_half_impulses(a.pos, ctxA, impA, trackerA, par);
    accumulate_half_impulses(b.pos, ctxB, impB, trackerB, par);
    add_coupling_half_impulses(a, b, ctxA, ctxB, coupling, impA, impB);
    kick_and_check(a, impA);
    kick_and_check(b, impB);

    ++a.time_step_index;
    ++b.time_step_index;
}

double divergence(const ParticleState& a, const ParticleState& b, const SimContext& ctx,
                  double speed_ref) {
    const std::size_t n = a.size();
    if (n != b.size())
        throw std::invalid_argument("divergence requires equal particle counts");
    if (n == 0) return 0.0;
    if (speed_ref <= 0.0) throw std::invalid_argument("speed_ref must be positive");

    const double diag = std::hypot(ctx.box().width, ctx.box().height);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2d pa = ctx.position_of(a, i), pb = ctx.position_of(b, i);
        Vec2d va = ctx.velocity_of(a, i), vb = ctx.velocity_of(b, i);
        double dxp = (pa.x - pb.x) / diag, dyp = (pa.y - pb.y) / diag;
        double dxv = (va.x - vb.x) / speed_ref, dyv = (va.y - vb.y) / speed_ref;
        acc += dxp * dxp + dyp * dyp + dxv * dxv + dyv * dyv;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

double coupling_energy(const ParticleState& a, const ParticleState& b, const SimContext& ctxA,
                       const SimContext& ctxB, const CouplingSpec& coupling,
                       std::int64_t joint_step) {
    if (!coupling.active_at(joint_step)) return 0.0;
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t pairs = std::max(na, nb);
    double u = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        Vec2d pa = ctxA.position_of(a, k % na);
        Vec2d pb = ctxB.position_of(b, k % nb);
        double dx = pb.x - pa.x, dy = pb.y - pa.y;
        u += 0.5 * coupling.lambda * (dx * dx + dy * dy);
    }
    return u;
}

} // namespace revgas
