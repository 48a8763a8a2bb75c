#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "revgas/config.hpp"
#include "revgas/types.hpp"

namespace revgas {

// Microstate of one vessel. In fixed_reversible mode positions and velocities
// are integers (exact, no hidden rounding state); in float_reference mode the
// same fields hold IEEE doubles in simulation units.
struct ParticleState {
    IntegratorKind mode = IntegratorKind::FixedReversible;
    std::vector<Vec2i> pos;
    std::vector<Vec2i> vel;
    std::vector<Vec2d> fpos;
    std::vector<Vec2d> fvel;
    std::int64_t time_step_index = 0;

    std::size_t size() const {
        return mode == IntegratorKind::FixedReversible ? pos.size() : fpos.size();
    }
    friend bool operator==(const ParticleState&, const ParticleState&) = default;
};

// Everything a step needs besides the state itself, with fixed-point scales
// pre-derived. Immutable once built.
class SimContext {
public:
    SimContext(BoxGeometry box, ForceField field, IntegratorMode mode);

    static SimContext from_config(const SimConfig& config);

    const BoxGeometry& box() const { return box_; }
    const ForceField& field() const { return field_; }
    const IntegratorMode& mode() const { return mode_; }

    double dt() const { return mode_.dt; }
    std::int64_t vel_scale() const { return mode_.fixed_point_scale; }
    std::int64_t pos_scale() const { return pos_scale_; }
    std::int64_t width_i() const { return width_i_; }
    std::int64_t height_i() const { return height_i_; }

    // double view of a particle, valid in both modes
    Vec2d position_of(const ParticleState& s, std::size_t i) const;
    Vec2d velocity_of(const ParticleState& s, std::size_t i) const;

    std::int64_t to_pos_units(double x) const;
    std::int64_t to_vel_units(double v) const;
    double from_pos_units(std::int64_t x) const;
    double from_vel_units(std::int64_t v) const;

private:
    BoxGeometry box_;
    ForceField field_;
    IntegratorMode mode_;
    std::int64_t pos_scale_ = 0;
    std::int64_t width_i_ = 0;
    std::int64_t height_i_ = 0;
};

} // namespace revgas
