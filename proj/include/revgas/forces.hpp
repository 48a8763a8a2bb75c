#pragma once

#include <cstdint>
#include <vector>

#include "revgas/state.hpp"

namespace revgas {

enum class Parallelism { Serial, OpenMP };

// Counts pair "collisions": a collision is one entry of a pair into the force
// cutoff from outside. The within-cutoff flags persist across steps.
struct CollisionTracker {
    std::vector<std::uint8_t> within; // packed upper-triangle pair flags
    std::int64_t total_entries = 0;
    std::size_t n = 0;

    void reset(std::size_t n_particles) {
        n = n_particles;
        within.assign(n < 2 ? 0 : n * (n - 1) / 2, 0);
        total_entries = 0;
    }
    std::size_t pair_index(std::size_t i, std::size_t j) const {
        // requires i < j
        return i * (2 * n - i - 1) / 2 + (j - i - 1);
    }
    double per_particle() const {
        return n == 0 ? 0.0 : 2.0 * static_cast<double>(total_entries) / static_cast<double>(n);
    }
};

// Half-step impulses for the opening/closing kick, in velocity integer units.
// Each ordered pair contribution is rounded half-to-even before accumulation,
// and the (j,i) contribution is the exact negation of (i,j), so pairwise
// momentum is conserved exactly.
void accumulate_half_impulses(const std::vector<Vec2i>& pos, const SimContext& ctx,
                              std::vector<Vec2i>& out, CollisionTracker* tracker,
                              Parallelism par);

// float_reference counterpart: per-particle force sums in doubles.
void accumulate_forces(const std::vector<Vec2d>& pos, const SimContext& ctx,
                       std::vector<Vec2d>& out, CollisionTracker* tracker,
                       Parallelism par);

// Pairwise potential energy (reporting only, doubles in both modes).
double potential_energy(const ParticleState& s, const SimContext& ctx);

} // namespace revgas
