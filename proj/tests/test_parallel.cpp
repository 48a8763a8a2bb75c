#include <doctest.h>

#include "revgas/forces.hpp"
#include "revgas/integrator.hpp"
#include "test_support.hpp"

using namespace revgas;
using namespace revgas::testing;

TEST_CASE("OpenMP impulse kernel matches the serial reference bit-for-bit") {
    SimConfig c = dense_config(300, 99);
    SimContext ctx = SimContext::from_config(c);
    ParticleState s = init_state(c, 99);
    for (int t = 0; t < 200; ++t) step(s, ctx); // mix a little first

    std::vector<Vec2i> serial_out, omp_out;
    CollisionTracker ts, tp;
    ts.reset(s.size());
    tp.reset(s.size());
    accumulate_half_impulses(s.pos, ctx, serial_out, &ts, Parallelism::Serial);
    accumulate_half_impulses(s.pos, ctx, omp_out, &tp, Parallelism::OpenMP);
    CHECK(serial_out == omp_out);
    CHECK(ts.total_entries == tp.total_entries);
    CHECK(ts.within == tp.within);
}

TEST_CASE("OpenMP float force kernel matches the serial reference bit-for-bit") {
    SimConfig c = dense_config(200, 7);
    c.mode = IntegratorKind::FloatReference;
    SimContext ctx = SimContext::from_config(c);
    ParticleState s = init_state(c, 7);
    for (int t = 0; t < 100; ++t) step(s, ctx);

    std::vector<Vec2d> serial_out, omp_out;
    accumulate_forces(s.fpos, ctx, serial_out, nullptr, Parallelism::Serial);
    accumulate_forces(s.fpos, ctx, omp_out, nullptr, Parallelism::OpenMP);
    CHECK(serial_out == omp_out);
}

TEST_CASE("full trajectories agree between serial and OpenMP stepping") {
    SimConfig c = dense_config(120, 5);
    SimContext ctx = SimContext::from_config(c);
    ParticleState a = init_state(c, 5);
    ParticleState b = a;
    for (int t = 0; t < 500; ++t) {
        step(a, ctx, nullptr, Parallelism::Serial);
        step(b, ctx, nullptr, Parallelism::OpenMP);
    }
    CHECK(bit_equal(a, b));
}
