#include "revgas/entropy.hpp"

#include <cmath>
#include <stdexcept>

#include "revgas/integrator.hpp"

namespace revgas {
namespace {

int cell_index_fixed(std::int64_t x, std::int64_t extent, int cells) {
    return static_cast<int>(static_cast<__int128>(x) * cells / extent);
}

int cell_index_float(double x, double extent, int cells) {
    int c = static_cast<int>(std::floor(x / extent * cells));
    if (c < 0) c = 0;
    if (c >= cells) c = cells - 1; // far edge closes the last cell
    return c;
}

} // namespace

MacroState coarse_grain(const ParticleState& s, const CoarseGrid& grid, const SimContext& ctx) {
    if (grid.cell_count() < 2)
        throw std::invalid_argument("coarse grid needs at least 2 cells");
    MacroState m;
    m.grid = grid;
    m.n_total = static_cast<std::int64_t>(s.size());
    m.cell_area = (ctx.box().width / grid.cells_x) * (ctx.box().height / grid.cells_y);
    m.occupancy.assign(static_cast<std::size_t>(grid.cell_count()), 0);

    if (s.mode == IntegratorKind::FixedReversible) {
        if (ctx.width_i() % grid.cells_x != 0 || ctx.height_i() % grid.cells_y != 0)
            throw std::invalid_argument("grid does not tile the box exactly");
        for (const Vec2i& p : s.pos) {
            int cx = cell_index_fixed(p.x, ctx.width_i(), grid.cells_x);
            int cy = cell_index_fixed(p.y, ctx.height_i(), grid.cells_y);
            ++m.occupancy[static_cast<std::size_t>(cy) * grid.cells_x + cx];
        }
    } else {
        for (const Vec2d& p : s.fpos) {
            int cx = cell_index_float(p.x, ctx.box().width, grid.cells_x);
            int cy = cell_index_float(p.y, ctx.box().height, grid.cells_y);
            ++m.occupancy[static_cast<std::size_t>(cy) * grid.cells_x + cx];
        }
    }
    m.entropy_macroscopic = macroscopic_entropy(m.occupancy);
    return m;
}

double macroscopic_entropy(const std::vector<std::int64_t>& occupancy) {
    std::int64_t n = 0;
    for (std::int64_t c : occupancy) n += c;
    if (n <= 0) throw std::invalid_argument("macroscopic entropy of an empty system is undefined");
    double s = 0.0;
    const double nd = static_cast<double>(n);
    for (std::int64_t c : occupancy) {
        if (c <= 0) continue;
        double p = static_cast<double>(c) / nd;
        s -= p * std::log(p);
    }
    return nd * s;
}

double occupied_volume_entropy(const MacroState& macro) {
    std::int64_t occupied = 0;
    for (std::int64_t c : macro.occupancy)
        if (c > 0) ++occupied;
    if (occupied == 0) throw std::invalid_argument("no occupied cells");
    return static_cast<double>(macro.n_total) *
           std::log(static_cast<double>(occupied) * macro.cell_area);
}

double region_return_fraction(const ParticleState& s, const Rect& region, const SimContext& ctx) {
    const std::size_t n = s.size();
    if (n == 0) return 0.0;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2d p = ctx.position_of(s, i);
        if (region.contains(p.x, p.y)) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(n);
}

namespace {

std::vector<double> pack_phase(const ParticleState& s) {
    std::vector<double> y;
    y.reserve(s.fpos.size() * 4);
    for (std::size_t i = 0; i < s.fpos.size(); ++i) {
        y.push_back(s.fpos[i].x);
        y.push_back(s.fpos[i].y);
        y.push_back(s.fvel[i].x);
        y.push_back(s.fvel[i].y);
    }
    return y;
}

std::vector<double> step_map(const std::vector<double>& y, const ParticleState& proto,
                             const SimContext& ctx) {
    ParticleState s = proto;
    for (std::size_t i = 0; i < s.fpos.size(); ++i) {
        s.fpos[i] = {y[4 * i], y[4 * i + 1]};
        s.fvel[i] = {y[4 * i + 2], y[4 * i + 3]};
    }
    step(s, ctx, nullptr, Parallelism::Serial);
    return pack_phase(s);
}

double det_gauss(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

std::vector<std::vector<double>> jacobian_fd(const std::vector<double>& y0,
                                             const ParticleState& proto, const SimContext& ctx,
                                             double h) {
    const std::size_t dim = y0.size();
    std::vector<std::vector<double>> jac(dim, std::vector<double>(dim, 0.0));
    for (std::size_t l = 0; l < dim; ++l) {
        std::vector<double> yp = y0, ym = y0;
        yp[l] += h;
        ym[l] -= h;
        std::vector<double> fp = step_map(yp, proto, ctx);
        std::vector<double> fm = step_map(ym, proto, ctx);
        for (std::size_t k = 0; k < dim; ++k) jac[k][l] = (fp[k] - fm[k]) / (2.0 * h);
    }
    return jac;
}

} // namespace

PhaseVolumeResult phase_volume_check(const ParticleState& s, const SimContext& ctx, double h) {
    if (s.mode != IntegratorKind::FloatReference)
        throw std::invalid_argument("phase_volume_check requires float_reference mode");
    if (s.size() > 4)
        throw std::invalid_argument("phase_volume_check is limited to N <= 4");

    std::vector<double> y0 = pack_phase(s);
    auto j1 = jacobian_fd(y0, s, ctx, h);
    auto j2 = jacobian_fd(y0, s, ctx, 0.5 * h);
    double d1 = det_gauss(j1);
    double d2 = det_gauss(j2);

    // Richardson-extrapolate the Jacobian entries, then take the determinant.
    const std::size_t dim = y0.size();
    std::vector<std::vector<double>> jr(dim, std::vector<double>(dim, 0.0));
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = 0; l < dim; ++l) jr[k][l] = (4.0 * j2[k][l] - j1[k][l]) / 3.0;

    PhaseVolumeResult r;
    r.defect = std::fabs(det_gauss(jr) - 1.0);
    r.fd_spread = std::fabs(d1 - d2);
    r.degenerate = r.fd_spread > 1e-5;
    return r;
}

} // namespace revgas
