#include <doctest.h>

#include <cmath>

#include "revgas/integrator.hpp"
#include "revgas/perturbation.hpp"
#include "test_support.hpp"

using namespace revgas;
using namespace revgas::testing;

TEST_CASE("a zero kick is the identity, bit for bit") {
    SimConfig c = dense_config(20, 3);
    SimContext ctx = SimContext::from_config(c);
    ParticleState s = init_state(c, 3);
    PerturbationSpec spec{0.0, 0, std::nullopt, 77};
    CHECK(bit_equal(apply_kick(s, spec, ctx), s));
}

TEST_CASE("kick magnitude and determinism") {
    SimConfig c = free_particle_config();
    SimContext ctx = SimContext::from_config(c);
    ParticleState s;
    s.mode = IntegratorKind::FixedReversible;
    s.pos = {Vec2i{ctx.to_pos_units(0.5), ctx.to_pos_units(0.5)}};
    s.vel = {Vec2i{0, 0}};

    const double eps = 1e-4;
    PerturbationSpec spec{eps, 0, std::nullopt, 5};
    ParticleState kicked = apply_kick(s, spec, ctx);
    Vec2d v = ctx.velocity_of(kicked, 0);
    const double quantum = 1.0 / static_cast<double>(ctx.vel_scale());
    CHECK(std::fabs(std::hypot(v.x, v.y) - eps) <= 2.0 * quantum);
    CHECK(kicked.pos == s.pos);

    ParticleState again = apply_kick(s, spec, ctx);
    CHECK(bit_equal(kicked, again));
}

TEST_CASE("divergence metric") {
    SimConfig c = dense_config(4, 9);
    SimContext ctx = SimContext::from_config(c);
    ParticleState a = init_state(c, 9);
    CHECK(divergence(a, a, ctx, c.mean_speed) == 0.0);

    // displace one particle by d with equal velocities: d_norm / sqrt(N)
    ParticleState b = a;
    const double d = 0.01;
    b.pos[2].x += ctx.to_pos_units(d);
    const double diag = std::hypot(1.0, 1.0);
    CHECK(divergence(a, b, ctx, c.mean_speed) ==
          doctest::Approx((d / diag) / std::sqrt(4.0)).epsilon(1e-9));
    CHECK(divergence(a, b, ctx, c.mean_speed) == divergence(b, a, ctx, c.mean_speed));

    ParticleState small = init_state(dense_config(3, 9), 9);
    CHECK_THROWS(divergence(a, small, ctx, c.mean_speed));
}

TEST_CASE("divergence right after a kick equals the kick RMS") {
    SimConfig c = dense_config(50, 21);
    SimContext ctx = SimContext::from_config(c);
    ParticleState base = init_state(c, 21);
    const double eps = 1e-5;
    ParticleState twin = apply_kick(base, {eps, 0, std::nullopt, 21}, ctx);
    // every particle gets |dv| = eps, so the velocity RMS term is eps/speed_ref
    CHECK(divergence(base, twin, ctx, c.mean_speed) ==
          doctest::Approx(eps / c.mean_speed).epsilon(1e-3));
}

TEST_CASE("lambda = 0 coupling equals independent stepping bit-exactly") {
    SimConfig ca = dense_config(12, 1);
    SimConfig cb = dense_config(20, 2);
    SimContext ctxA = SimContext::from_config(ca);
    SimContext ctxB = SimContext::from_config(cb);
    ParticleState a = init_state(ca, 1), a2 = a;
    ParticleState b = init_state(cb, 2), b2 = b;
    CouplingSpec off{0.0, 0, 1000};
    for (int t = 0; t < 200; ++t) {
        coupled_step(a, b, ctxA, ctxB, off, t);
        step(a2, ctxA);
        step(b2, ctxB);
    }
    CHECK(bit_equal(a, a2));
    CHECK(bit_equal(b, b2));
}

TEST_CASE("the coupled joint map is bit-reversible for any lambda") {
    SimConfig ca = dense_config(10, 4);
    SimConfig cb = dense_config(25, 5);
    SimContext ctxA = SimContext::from_config(ca);
    SimContext ctxB = SimContext::from_config(cb);
    ParticleState a0 = init_state(ca, 4);
    ParticleState b0 = init_state(cb, 5);
    ParticleState a = a0, b = b0;

    const int k = 400;
    CouplingSpec coupling{0.05, 0, 10 * k};
    for (int t = 0; t < k; ++t) coupled_step(a, b, ctxA, ctxB, coupling, t);
    reverse_velocities(a);
    reverse_velocities(b);
    for (int t = k; t < 2 * k; ++t) coupled_step(a, b, ctxA, ctxB, coupling, t);

    // both vessels return to the start with velocities flipped
    CHECK(a.pos == a0.pos);
    CHECK(b.pos == b0.pos);
    for (std::size_t i = 0; i < a0.vel.size(); ++i) {
        CHECK(a.vel[i].x == -a0.vel[i].x);
        CHECK(a.vel[i].y == -a0.vel[i].y);
    }
    for (std::size_t i = 0; i < b0.vel.size(); ++i) {
        CHECK(b.vel[i].x == -b0.vel[i].x);
        CHECK(b.vel[i].y == -b0.vel[i].y);
    }
}

TEST_CASE("unequal vessel sizes: wrapped pairing keeps the total impulse at zero") {
    SimConfig ca = dense_config(3, 6);
    SimConfig cb = dense_config(7, 7);
    ca.repulsion_strength = 0.0; // isolate the coupling impulses
    cb.repulsion_strength = 0.0;
    SimContext ctxA = SimContext::from_config(ca);
    SimContext ctxB = SimContext::from_config(cb);
    ParticleState a = init_state(ca, 6);
    ParticleState b = init_state(cb, 7);
    for (auto& v : a.vel) v = {0, 0};
    for (auto& v : b.vel) v = {0, 0};

    CouplingSpec coupling{0.5, 0, 10};
    coupled_step(a, b, ctxA, ctxB, coupling, 0);

    std::int64_t px = 0, py = 0;
    for (const auto& v : a.vel) {
        px += v.x;
        py += v.y;
    }
    for (const auto& v : b.vel) {
        px += v.x;
        py += v.y;
    }
    CHECK(px == 0);
    CHECK(py == 0);
}

TEST_CASE("divergence grows with epsilon at fixed time") {
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SimConfig c = dense_config(40, seed);
        SimContext ctx = SimContext::from_config(c);
        ParticleState base = init_state(c, seed);
        ParticleState small = apply_kick(base, {1e-7, 0, std::nullopt, seed}, ctx);
        ParticleState large = apply_kick(base, {1e-6, 0, std::nullopt, seed}, ctx);
        for (int t = 0; t < 400; ++t) {
            step(base, ctx);
            step(small, ctx);
            step(large, ctx);
        }
        if (divergence(base, large, ctx, c.mean_speed) >=
            divergence(base, small, ctx, c.mean_speed))
            ++wins;
    }
    CHECK(wins >= 4);
}
