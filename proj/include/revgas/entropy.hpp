#pragma once

#include <cstdint>
#include <vector>

#include "revgas/state.hpp"

namespace revgas {

// Coarse grid over the box. The box must tile exactly: in fixed mode the
// integer box extents are divisible by the cell counts.
struct CoarseGrid {
    int cells_x = 16;
    int cells_y = 16;
    int cell_count() const { return cells_x * cells_y; }
};

struct MacroState {
    std::vector<std::int64_t> occupancy;
    std::int64_t n_total = 0;
    CoarseGrid grid;
    double cell_area = 0.0;
    double entropy_macroscopic = 0.0;
};

// Cell assignment with half-open cells; the box's far edges close the last
// row/column. Exact integer arithmetic in fixed mode.
MacroState coarse_grain(const ParticleState& s, const CoarseGrid& grid, const SimContext& ctx);

// S = -N sum_c (n_c/N) ln(n_c/N), the Stirling limit of ln(multinomial).
// Throws on an empty system.
double macroscopic_entropy(const std::vector<std::int64_t>& occupancy);

// S = N ln(V_occ), V_occ = occupied cell count * cell area; constant fixed to 0.
double occupied_volume_entropy(const MacroState& macro);

// Fraction of particles inside the rectangle (half-open convention).
double region_return_fraction(const ParticleState& s, const Rect& region, const SimContext& ctx);

struct PhaseVolumeResult {
    double defect = 0.0;     // |det J - 1|, Richardson-extrapolated
    double fd_spread = 0.0;  // |det(h) - det(h/2)|, finite-difference quality
    bool degenerate = false; // set when the spread dominates the defect
};

// One-step Jacobian determinant defect via central finite differences at two
// step sizes. float_reference mode, small N only.
PhaseVolumeResult phase_volume_check(const ParticleState& s, const SimContext& ctx, double h = 1e-6);

} // namespace revgas
