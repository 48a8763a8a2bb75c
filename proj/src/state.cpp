#include "revgas/state.hpp"

#include <cmath>

namespace revgas {

SimContext::SimContext(BoxGeometry box, ForceField field, IntegratorMode mode)
    : box_(box), field_(field), mode_(mode) {
    double ps = static_cast<double>(mode_.fixed_point_scale) / mode_.dt;
    if (mode_.kind == IntegratorKind::FixedReversible) {
        if (!(ps > 0.0) || std::floor(ps) != ps)
            throw ConfigError({"fixed_point_scale / dt must be an exact positive integer"});
        double wi = box_.width * ps;
        double hi = box_.height * ps;
        if (std::floor(wi) != wi || std::floor(hi) != hi || wi > 9.0e15 || hi > 9.0e15)
            throw ConfigError({"box extents must be exactly representable at the position scale"});
        pos_scale_ = static_cast<std::int64_t>(ps);
        width_i_ = static_cast<std::int64_t>(wi);
        height_i_ = static_cast<std::int64_t>(hi);
    } else {
        // float_reference mode only uses the scale for initial quantization
        pos_scale_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::nearbyint(ps)));
        width_i_ = static_cast<std::int64_t>(std::nearbyint(box_.width * static_cast<double>(pos_scale_)));
        height_i_ = static_cast<std::int64_t>(std::nearbyint(box_.height * static_cast<double>(pos_scale_)));
    }
}

SimContext SimContext::from_config(const SimConfig& config) {
    ForceField field{config.particle_radius, config.repulsion_strength, config.cutoff};
    IntegratorMode mode{config.mode, config.dt, config.fixed_point_scale};
    return SimContext(config.box, field, mode);
}

Vec2d SimContext::position_of(const ParticleState& s, std::size_t i) const {
    if (s.mode == IntegratorKind::FixedReversible)
        return {from_pos_units(s.pos[i].x), from_pos_units(s.pos[i].y)};
    return s.fpos[i];
}

Vec2d SimContext::velocity_of(const ParticleState& s, std::size_t i) const {
    if (s.mode == IntegratorKind::FixedReversible)
        return {from_vel_units(s.vel[i].x), from_vel_units(s.vel[i].y)};
    return s.fvel[i];
}

std::int64_t SimContext::to_pos_units(double x) const {
    return static_cast<std::int64_t>(std::nearbyint(x * static_cast<double>(pos_scale_)));
}

std::int64_t SimContext::to_vel_units(double v) const {
    return static_cast<std::int64_t>(std::nearbyint(v * static_cast<double>(mode_.fixed_point_scale)));
}

double SimContext::from_pos_units(std::int64_t x) const {
    return static_cast<double>(x) / static_cast<double>(pos_scale_);
}

double SimContext::from_vel_units(std::int64_t v) const {
    return static_cast<double>(v) / static_cast<double>(mode_.fixed_point_scale);
}

} // namespace revgas
