#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "revgas/forces.hpp"
#include "revgas/state.hpp"

namespace revgas {

// A single seeded velocity kick of magnitude epsilon per targeted particle.
// epsilon = 0 is the non-perturbing observer and leaves the state untouched.
struct PerturbationSpec {
    double epsilon = 0.0;
    std::int64_t kick_step = 0;
    std::optional<std::vector<std::size_t>> target; // nullopt = all particles
    std::uint64_t seed = 0;
};

// Weak inter-vessel spring coupling, active on joint steps in [start, end).
struct CouplingSpec {
    double lambda = 0.0;
    std::int64_t active_start = 0;
    std::int64_t active_end = 0;
    bool active_at(std::int64_t joint_step) const {
        return lambda > 0.0 && joint_step >= active_start && joint_step < active_end;
    }
};

ParticleState apply_kick(const ParticleState& s, const PerturbationSpec& spec, const SimContext& ctx);

// One synchronized step of both vessels. Within the active interval, pair k
// (k over the larger count, indices taken modulo each vessel's N) exchanges a
// weak spring impulse lambda*(x_B - x_A)*dt, rounded and applied
// equal-and-opposite like intra-vessel forces, so the joint map stays
// bit-reversible. With lambda = 0 this is bit-identical to two independent
// step calls. Both contexts must share dt and fixed-point scale.
void coupled_step(ParticleState& a, ParticleState& b, const SimContext& ctxA,
                  const SimContext& ctxB, const CouplingSpec& coupling,
                  std::int64_t joint_step, CollisionTracker* trackerA = nullptr,
                  CollisionTracker* trackerB = nullptr,
                  Parallelism par = Parallelism::OpenMP);

// RMS phase-space distance per particle; positions normalized by the box
// diagonal, velocities by speed_ref. Throws on mismatched particle counts.
double divergence(const ParticleState& a, const ParticleState& b, const SimContext& ctx,
                  double speed_ref);

// Spring potential of the active coupling (diagnostic, doubles).
double coupling_energy(const ParticleState& a, const ParticleState& b, const SimContext& ctxA,
                       const SimContext& ctxB, const CouplingSpec& coupling,
                       std::int64_t joint_step);

} // namespace revgas
