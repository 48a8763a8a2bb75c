#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <boost/multiprecision/cpp_int.hpp>

#include "revgas/entropy.hpp"
#include "revgas/integrator.hpp"
#include "revgas/rng.hpp"
#include "test_support.hpp"

using namespace revgas;
using namespace revgas::testing;
using boost::multiprecision::cpp_int;

namespace {

// exact ln(multinomial coefficient) via big-integer factorials
double ln_multinomial(const std::vector<std::int64_t>& occupancy) {
    std::int64_t n = 0;
    for (auto c : occupancy) n += c;
    cpp_int w = 1;
    for (std::int64_t i = 2; i <= n; ++i) w *= i;
    for (auto c : occupancy)
        for (std::int64_t i = 2; i <= c; ++i) w /= i;
    return std::log(w.convert_to<double>());
}

ParticleState state_at(const SimContext& ctx, std::vector<Vec2d> positions) {
    ParticleState s;
    s.mode = IntegratorKind::FixedReversible;
    for (const auto& p : positions) {
        s.pos.push_back({ctx.to_pos_units(p.x), ctx.to_pos_units(p.y)});
        s.vel.push_back({0, 0});
    }
    return s;
}

} // namespace

TEST_CASE("coarse_grain basics and the half-open boundary rule") {
    SimConfig c = dense_config(4);
    c.grid = {2, 2};
    SimContext ctx = SimContext::from_config(c);
    CoarseGrid grid{2, 2};

    SUBCASE("all particles in one cell") {
        ParticleState s = state_at(ctx, {{0.1, 0.1}, {0.2, 0.2}, {0.15, 0.3}, {0.3, 0.15}});
        MacroState m = coarse_grain(s, grid, ctx);
        CHECK(m.occupancy == std::vector<std::int64_t>{4, 0, 0, 0});
        CHECK(m.entropy_macroscopic == 0.0);
    }
    SUBCASE("one per cell") {
        ParticleState s = state_at(ctx, {{0.2, 0.2}, {0.7, 0.2}, {0.2, 0.7}, {0.7, 0.7}});
        MacroState m = coarse_grain(s, grid, ctx);
        CHECK(m.occupancy == std::vector<std::int64_t>{1, 1, 1, 1});
        CHECK(m.entropy_macroscopic == doctest::Approx(4.0 * std::log(4.0)).epsilon(1e-12));
    }
    SUBCASE("a particle exactly on an interior boundary lands in the higher cell") {
        ParticleState s = state_at(ctx, {{0.5, 0.1}});
        MacroState m = coarse_grain(s, grid, ctx);
        CHECK(m.occupancy == std::vector<std::int64_t>{0, 1, 0, 0});
    }
}

TEST_CASE("macroscopic entropy matches the exact multinomial count for N <= 50") {
    Pcg32 rng(2024, 1);
    for (int trial = 0; trial < 30; ++trial) {
        const int cells = 2 + static_cast<int>(rng.next_u32() % 15);
        const std::int64_t n = 10 + static_cast<std::int64_t>(rng.next_u32() % 41);
        std::vector<std::int64_t> occ(cells, 0);
        for (std::int64_t i = 0; i < n; ++i) ++occ[rng.next_u32() % cells];

        double s = macroscopic_entropy(occ);
        double lnw = ln_multinomial(occ);

        // Stirling error: 1/2 ln(2 pi n) for the numerator plus one such term
        // per occupied cell, with a unit slack for the 1/(12n) tails
        double bound = 0.5 * std::log(2 * M_PI * n) + 1.0;
        for (auto c : occ)
            if (c > 0) bound += 0.5 * std::log(2 * M_PI * c) + 1.0 / (12.0 * c);
        CHECK(std::fabs(s - lnw) <= bound);
        CHECK(s >= lnw); // Shannon form upper-bounds ln W
    }
}

TEST_CASE("macroscopic entropy errors and bounds") {
    CHECK_THROWS(macroscopic_entropy({0, 0, 0}));
    CHECK(macroscopic_entropy({7, 0, 0, 0}) == 0.0);

    // bounds and extremes: 0 <= S <= N ln C
    Pcg32 rng(5, 2);
    for (int trial = 0; trial < 50; ++trial) {
        int cells = 2 + static_cast<int>(rng.next_u32() % 10);
        std::vector<std::int64_t> occ(cells, 0);
        std::int64_t n = 1 + rng.next_u32() % 200;
        for (std::int64_t i = 0; i < n; ++i) ++occ[rng.next_u32() % cells];
        double s = macroscopic_entropy(occ);
        CHECK(s >= 0.0);
        CHECK(s <= n * std::log(static_cast<double>(cells)) + 1e-9);

        // invariance under cell relabeling
        std::vector<std::int64_t> shuffled = occ;
        std::reverse(shuffled.begin(), shuffled.end());
        CHECK(macroscopic_entropy(shuffled) == doctest::Approx(s).epsilon(1e-13));
    }
    // uniform occupancy hits the maximum exactly
    CHECK(macroscopic_entropy({5, 5, 5, 5}) ==
          doctest::Approx(20.0 * std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("occupied volume entropy follows N ln V") {
    SimConfig c = dense_config(8);
    c.grid = {4, 4};
    SimContext ctx = SimContext::from_config(c);
    CoarseGrid grid{4, 4};
    const double cell_area = 0.25 * 0.25;

    ParticleState one_cell =
        state_at(ctx, {{0.1, 0.1}, {0.12, 0.1}, {0.1, 0.14}, {0.2, 0.2}});
    MacroState m1 = coarse_grain(one_cell, grid, ctx);
    CHECK(occupied_volume_entropy(m1) == doctest::Approx(4.0 * std::log(cell_area)));

    // doubling the occupied volume adds N ln 2
    ParticleState two_cells =
        state_at(ctx, {{0.1, 0.1}, {0.12, 0.1}, {0.4, 0.1}, {0.45, 0.2}});
    MacroState m2 = coarse_grain(two_cells, grid, ctx);
    CHECK(occupied_volume_entropy(m2) - occupied_volume_entropy(m1) ==
          doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-12));

    // full expansion: every cell occupied -> N ln(box area)
    std::vector<Vec2d> spread;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            spread.push_back({0.125 + 0.25 * i, 0.125 + 0.25 * j});
    MacroState m3 = coarse_grain(state_at(ctx, spread), grid, ctx);
    CHECK(occupied_volume_entropy(m3) ==
          doctest::Approx(16.0 * std::log(1.0)).epsilon(1e-12));
}

TEST_CASE("entropy ignores velocities") {
    SimConfig c = dense_config(50, 31);
    SimContext ctx = SimContext::from_config(c);
    CoarseGrid grid{16, 16};
    ParticleState s = init_state(c, 31);
    for (int t = 0; t < 300; ++t) step(s, ctx);
    MacroState before = coarse_grain(s, grid, ctx);
    reverse_velocities(s);
    MacroState after = coarse_grain(s, grid, ctx);
    CHECK(before.occupancy == after.occupancy);
    CHECK(before.entropy_macroscopic == after.entropy_macroscopic);
}

TEST_CASE("region return fraction") {
    SimConfig c = dense_config(4);
    SimContext ctx = SimContext::from_config(c);
    Rect region{0.0, 0.0, 0.5, 0.5};
    ParticleState inside = state_at(ctx, {{0.1, 0.1}, {0.2, 0.3}, {0.4, 0.4}, {0.3, 0.2}});
    CHECK(region_return_fraction(inside, region, ctx) == 1.0);
    ParticleState outside = state_at(ctx, {{0.6, 0.6}, {0.7, 0.8}, {0.9, 0.6}, {0.6, 0.9}});
    CHECK(region_return_fraction(outside, region, ctx) == 0.0);
}

TEST_CASE("one-step phase volume is preserved") {
    SimConfig c = dense_config(2);
    c.mode = IntegratorKind::FloatReference;
    SimContext ctx = SimContext::from_config(c);

    SUBCASE("free drift is an exact shear") {
        SimConfig free_c = c;
        free_c.repulsion_strength = 0.0;
        SimContext fctx = SimContext::from_config(free_c);
        ParticleState s;
        s.mode = IntegratorKind::FloatReference;
        s.fpos = {{0.4, 0.4}, {0.6, 0.6}};
        s.fvel = {{0.1, 0.05}, {-0.07, 0.02}};
        PhaseVolumeResult r = phase_volume_check(s, fctx);
        CHECK(r.defect < 1e-9);
        CHECK_FALSE(r.degenerate);
    }

    SUBCASE("interacting pair: |det J - 1| < 1e-6 and reversal-invariant") {
        ParticleState s;
        s.mode = IntegratorKind::FloatReference;
        // within cutoff (separation 0.012 < 0.018), far from walls
        s.fpos = {{0.500, 0.500}, {0.512, 0.505}};
        s.fvel = {{0.2, -0.1}, {-0.15, 0.12}};
        PhaseVolumeResult r = phase_volume_check(s, ctx);
        CHECK(r.defect < 1e-6);
        CHECK_FALSE(r.degenerate);

        ParticleState rs = s;
        reverse_velocities(rs);
        PhaseVolumeResult rr = phase_volume_check(rs, ctx);
        CHECK(rr.defect < 1e-6);
        CHECK(std::fabs(rr.defect - r.defect) < 1e-7);
    }
}
