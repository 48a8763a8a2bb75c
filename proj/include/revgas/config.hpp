#pragma once

#include <cstdint>
#include <string>

#include "revgas/types.hpp"

namespace revgas {

struct GridSpec {
    int cells_x = 16;
    int cells_y = 16;
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// One JSON document describes one run completely; together with the seed it
// pins the trajectory byte-for-byte.
struct SimConfig {
    std::int64_t n_particles = 1;
    BoxGeometry box;
    double particle_radius = 0.01;
    double repulsion_strength = 5.0;
    double cutoff = 0.03;
    double dt = 0.0009765625;
    std::int64_t steps = 1000;
    std::int64_t sample_every = 10;
    GridSpec grid;
    IntegratorKind mode = IntegratorKind::FixedReversible;
    std::int64_t fixed_point_scale = 4294967296;
    double mean_speed = 1.0;
    std::uint64_t seed = 0;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Parses and validates; throws ConfigError listing every violation, not just
// the first. Unknown keys are rejected by name.
SimConfig parse_config(const std::string& json_text);

// Canonical re-emission: parse_config(emit_config(c)) == c, digest included.
std::string emit_config(const SimConfig& config);

// FNV-1a 64 over the canonical form, as 16 hex digits.
std::string config_digest(const SimConfig& config);

} // namespace revgas
