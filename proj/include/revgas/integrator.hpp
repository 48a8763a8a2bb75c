#pragma once

#include <cstdint>

#include "revgas/forces.hpp"
#include "revgas/state.hpp"

namespace revgas {

// Seeded placement (rejection sampling inside the initial region, no pairwise
// overlap) plus isotropic velocities at the configured mean speed.
// Throws PackingError when the region cannot hold n disks.
ParticleState init_state(const SimConfig& config, std::uint64_t seed);

// One kick-drift-kick update. In fixed_reversible mode the map is a bijection
// on representable states and satisfies reverse . step . reverse = step_back
// bit-exactly. Walls are exact integer mirrors applied inside the drift.
// Throws OverflowError if a velocity leaves the representable range.
void step(ParticleState& s, const SimContext& ctx, CollisionTracker* tracker = nullptr,
          Parallelism par = Parallelism::OpenMP);

// Exact algebraic inverse of step (fixed mode); decrements time_step_index.
void step_back(ParticleState& s, const SimContext& ctx, CollisionTracker* tracker = nullptr,
               Parallelism par = Parallelism::OpenMP);

// Negates every velocity component; positions and step index untouched.
void reverse_velocities(ParticleState& s);

// Kinetic plus pairwise potential energy, floating point, reporting only.
double total_energy(const ParticleState& s, const SimContext& ctx);

// Exact mirror fold of one coordinate onto [0, extent-1]; flips v per
// reflection. Exposed for tests.
void fold_coordinate(std::int64_t& x, std::int64_t& v, std::int64_t extent);

} // namespace revgas
