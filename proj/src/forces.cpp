#include "revgas/forces.hpp"

#include <cmath>

namespace revgas {
namespace {

// Repulsion magnitude over r: F(r)/r = (2k/rc)(1 - r/rc)/r for r < rc.
// A strictly symmetric function of the separation, so the (j,i) contribution
// is the exact IEEE negation of (i,j).
inline double force_over_r(double r2, double cutoff, double strength) {
    double r = std::sqrt(r2);
    if (r <= 0.0) return 0.0; // exactly coincident disks exert no force
    return (2.0 * strength / cutoff) * (1.0 - r / cutoff) / r;
}

template <typename Body>
void for_each_particle(std::size_t n, Parallelism par, Body body) {
    if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

} // namespace

void accumulate_half_impulses(const std::vector<Vec2i>& pos, const SimContext& ctx,
                              std::vector<Vec2i>& out, CollisionTracker* tracker,
                              Parallelism par) {
    const std::size_t n = pos.size();
    out.assign(n, Vec2i{});
    if (ctx.field().repulsion_strength <= 0.0 || n < 2) {
        if (tracker && tracker->n != n) tracker->reset(n);
        return;
    }
    if (tracker && tracker->n != n) tracker->reset(n);

    const double inv_ps = 1.0 / static_cast<double>(ctx.pos_scale());
    const double rc = ctx.field().cutoff;
    const double rc2 = rc * rc;
    const double k = ctx.field().repulsion_strength;
    // impulse = F * dt/2, in velocity integer units
    const double impulse_scale = 0.5 * ctx.dt() * static_cast<double>(ctx.vel_scale());

    std::int64_t entries = 0;
#pragma omp parallel for schedule(static) reduction(+ : entries) if (par == Parallelism::OpenMP)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        std::int64_t ax = 0, ay = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double dx = static_cast<double>(pos[i].x - pos[j].x) * inv_ps;
            double dy = static_cast<double>(pos[i].y - pos[j].y) * inv_ps;
            double r2 = dx * dx + dy * dy;
            bool inside = r2 < rc2;
            if (tracker && j > i) {
                std::uint8_t& flag = tracker->within[tracker->pair_index(i, j)];
                if (inside && !flag) ++entries;
                flag = inside ? 1 : 0;
            }
            if (!inside) continue;
            double c = force_over_r(r2, rc, k) * impulse_scale;
            ax += static_cast<std::int64_t>(std::nearbyint(c * dx));
            ay += static_cast<std::int64_t>(std::nearbyint(c * dy));
        }
        out[i] = Vec2i{ax, ay};
    }
    if (tracker) tracker->total_entries += entries;
}

void accumulate_forces(const std::vector<Vec2d>& pos, const SimContext& ctx,
                       std::vector<Vec2d>& out, CollisionTracker* tracker,
                       Parallelism par) {
    const std::size_t n = pos.size();
    out.assign(n, Vec2d{});
    if (tracker && tracker->n != n) tracker->reset(n);
    if (ctx.field().repulsion_strength <= 0.0 || n < 2) return;

    const double rc = ctx.field().cutoff;
    const double rc2 = rc * rc;
    const double k = ctx.field().repulsion_strength;

    std::int64_t entries = 0;
#pragma omp parallel for schedule(static) reduction(+ : entries) if (par == Parallelism::OpenMP)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double fx = 0.0, fy = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double dx = pos[i].x - pos[j].x;
            double dy = pos[i].y - pos[j].y;
            double r2 = dx * dx + dy * dy;
            bool inside = r2 < rc2;
            if (tracker && j > i) {
                std::uint8_t& flag = tracker->within[tracker->pair_index(i, j)];
                if (inside && !flag) ++entries;
                flag = inside ? 1 : 0;
            }
            if (!inside) continue;
            double c = force_over_r(r2, rc, k);
            fx += c * dx;
            fy += c * dy;
        }
        out[i] = Vec2d{fx, fy};
    }
    if (tracker) tracker->total_entries += entries;
}

double potential_energy(const ParticleState& s, const SimContext& ctx) {
    const std::size_t n = s.size();
    const double rc = ctx.field().cutoff;
    const double rc2 = rc * rc;
    const double k = ctx.field().repulsion_strength;
    if (k <= 0.0 || n < 2) return 0.0;
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2d pi = ctx.position_of(s, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec2d pj = ctx.position_of(s, j);
            double dx = pi.x - pj.x;
            double dy = pi.y - pj.y;
            double r2 = dx * dx + dy * dy;
            if (r2 >= rc2) continue;
            double t = 1.0 - std::sqrt(r2) / rc;
            u += k * t * t;
        }
    }
    return u;
}

} // namespace revgas
