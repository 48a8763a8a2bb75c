#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "revgas/forces.hpp"
#include "revgas/integrator.hpp"

using namespace revgas;
using Clock = std::chrono::steady_clock;

namespace {

SimConfig bench_config(std::int64_t n) {
    SimConfig c;
    c.n_particles = n;
    c.box = {1.0, 1.0, {0.05, 0.05, 0.95, 0.95}};
    c.particle_radius = 0.004;
    c.cutoff = 0.012;
    c.repulsion_strength = 5.0;
    c.seed = 12345;
    return c;
}

double time_kernel(const std::vector<Vec2i>& pos, const SimContext& ctx, Parallelism par,
                   int reps, std::vector<Vec2i>& out) {
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) accumulate_half_impulses(pos, ctx, out, nullptr, par);
    auto t1 = Clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both kernels run serially\n");
#endif
    std::printf("%8s %14s %14s %9s %9s\n", "N", "serial [ms]", "openmp [ms]", "speedup", "match");

    for (std::int64_t n : {100, 200, 400, 800, 1600}) {
        SimConfig cfg = bench_config(n);
        SimContext ctx = SimContext::from_config(cfg);
        ParticleState s = init_state(cfg, cfg.seed);

        const int reps = n <= 400 ? 200 : 50;
        std::vector<Vec2i> serial_out, omp_out;
        double ts = time_kernel(s.pos, ctx, Parallelism::Serial, reps, serial_out);
        double tp = time_kernel(s.pos, ctx, Parallelism::OpenMP, reps, omp_out);
        bool match = serial_out == omp_out;
        std::printf("%8lld %14.3f %14.3f %9.2f %9s\n", static_cast<long long>(n), ts * 1e3,
                    tp * 1e3, ts / tp, match ? "yes" : "NO");
        if (!match) return 1;
    }
    return 0;
}
