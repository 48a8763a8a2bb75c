#include "revgas/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "revgas/integrator.hpp"

namespace revgas {
namespace {

bool due(std::int64_t t, std::int64_t every, std::int64_t last) {
    return t % every == 0 || t == last;
}

SampleRow full_row(const ParticleState& s, const SimContext& ctx, const CoarseGrid& grid,
                   const Rect& region) {
    SampleRow row;
    row.step = s.time_step_index;
    MacroState m = coarse_grain(s, grid, ctx);
    row.entropy_macro = m.entropy_macroscopic;
    row.entropy_volume = occupied_volume_entropy(m);
    row.return_fraction = region_return_fraction(s, region, ctx);
    row.energy = total_energy(s, ctx);
    return row;
}

} // namespace

FreeExpansionResult run_free_expansion(const SimConfig& config) {
    SimContext ctx = SimContext::from_config(config);
    CoarseGrid grid{config.grid.cells_x, config.grid.cells_y};
    ParticleState s = init_state(config, config.seed);
    CollisionTracker tracker;
    tracker.reset(s.size());

    FreeExpansionResult out;
    out.series.protocol = "expand";
    out.series.config_digest = config_digest(config);
    out.series.seed = config.seed;

    for (std::int64_t t = 0;; ++t) {
        if (due(t, config.sample_every, config.steps))
            out.series.rows.push_back(full_row(s, ctx, grid, config.box.initial_region));
        if (t == config.steps) break;
        step(s, ctx, &tracker);
    }
    out.final_state = std::move(s);
    out.collisions_per_particle = tracker.per_particle();
    return out;
}

LoschmidtResult run_loschmidt(const SimConfig& config, std::int64_t reversal_step,
                              const PerturbationSpec& perturbation) {
    if (reversal_step < 0) throw std::invalid_argument("reversal_step must be >= 0");
    if (perturbation.kick_step < 0 || perturbation.kick_step > 2 * reversal_step)
        throw std::invalid_argument("kick_step must lie in [0, 2 * reversal_step]");

    SimContext ctx = SimContext::from_config(config);
    CoarseGrid grid{config.grid.cells_x, config.grid.cells_y};
    ParticleState s = init_state(config, config.seed);
    CollisionTracker tracker;
    tracker.reset(s.size());

    LoschmidtResult out;
    out.initial_state = s;
    out.series.protocol = "loschmidt";
    out.series.config_digest = config_digest(config);
    out.series.seed = config.seed;

    const std::int64_t total = 2 * reversal_step;
    for (std::int64_t t = 0;; ++t) {
        if (t == reversal_step) {
            out.collisions_per_particle_at_reversal = tracker.per_particle();
            reverse_velocities(s);
        }
        if (t == perturbation.kick_step && perturbation.epsilon > 0.0)
            s = apply_kick(s, perturbation, ctx);
        if (due(t, config.sample_every, total) || t == reversal_step ||
            (t == perturbation.kick_step && perturbation.epsilon > 0.0))
            out.series.rows.push_back(full_row(s, ctx, grid, config.box.initial_region));
        if (t == total) break;
        step(s, ctx, &tracker);
    }
    out.final_state = std::move(s);
    return out;
}

SyncResult run_two_vessel_sync(const SimConfig& configA, const SimConfig& configB,
                               std::int64_t preparation_steps, const CouplingSpec& coupling,
                               std::int64_t joint_steps, int smoothing_window,
                               int persistence_samples) {
    SimContext ctxA = SimContext::from_config(configA);
    SimContext ctxB = SimContext::from_config(configB);
    CoarseGrid gridA{configA.grid.cells_x, configA.grid.cells_y};
    CoarseGrid gridB{configB.grid.cells_x, configB.grid.cells_y};

    // B: expand a compact state, then reverse, so its isolated future shrinks.
    ParticleState b = init_state(configB, configB.seed);
    SyncResult out;
    out.b_compact_entropy = coarse_grain(b, gridB, ctxB).entropy_macroscopic;
    for (std::int64_t t = 0; t < preparation_steps; ++t) step(b, ctxB);
    reverse_velocities(b);
    b.time_step_index = 0;

    ParticleState a = init_state(configA, configA.seed);

    out.series_a.protocol = "sync_a";
    out.series_b.protocol = "sync_b";
    out.series_a.config_digest = config_digest(configA);
    out.series_b.config_digest = config_digest(configB);
    out.series_a.seed = configA.seed;
    out.series_b.seed = configB.seed;

    const std::int64_t every = std::min(configA.sample_every, configB.sample_every);
    for (std::int64_t t = 0;; ++t) {
        if (due(t, every, joint_steps)) {
            SampleRow ra = full_row(a, ctxA, gridA, configA.box.initial_region);
            SampleRow rb = full_row(b, ctxB, gridB, configB.box.initial_region);
            ra.step = t;
            rb.step = t;
            out.series_a.rows.push_back(ra);
            out.series_b.rows.push_back(rb);
            out.joint_energy.push_back(*ra.energy + *rb.energy +
                                       coupling_energy(a, b, ctxA, ctxB, coupling, t));
        }
        if (t == joint_steps) break;
        coupled_step(a, b, ctxA, ctxB, coupling, t);
    }

    std::vector<double> b_entropy;
    std::vector<std::int64_t> steps;
    for (const auto& row : out.series_b.rows) {
        b_entropy.push_back(*row.entropy_macro);
        steps.push_back(row.step);
    }
    std::vector<double> smoothed = smooth_series(b_entropy, smoothing_window);
    auto idx = first_persistent_slope(smoothed, true, persistence_samples);
    if (idx) out.sync_step = steps[*idx];
    return out;
}

RecurrenceResult run_recurrence(const SimConfig& config, std::int64_t max_steps, double radius,
                                const ParticleState* initial_override) {
    if (config.n_particles > 3 && initial_override == nullptr)
        throw std::invalid_argument("run_recurrence is limited to N <= 3 (recurrence times explode with N)");

    SimContext ctx = SimContext::from_config(config);
    CoarseGrid grid{config.grid.cells_x, config.grid.cells_y};
    ParticleState initial = initial_override ? *initial_override : init_state(config, config.seed);
    if (initial.size() > 3)
        throw std::invalid_argument("run_recurrence is limited to N <= 3");
    ParticleState s = initial;

    RecurrenceResult out;
    out.series.protocol = "recurrence";
    out.series.config_digest = config_digest(config);
    out.series.seed = config.seed;
    out.entropy_initial = coarse_grain(initial, grid, ctx).entropy_macroscopic;

    bool left_ball = false; // a return only counts after the trajectory has left the ball
    for (std::int64_t t = 0;; ++t) {
        if (t > 0) {
            double d = divergence(s, initial, ctx, config.mean_speed);
            if (!left_ball && d >= radius) left_ball = true;
            if (left_ball && d < radius) {
                out.recurrence_step = t;
                out.exact_bit_return = (s.pos == initial.pos && s.vel == initial.vel &&
                                        s.fpos == initial.fpos && s.fvel == initial.fvel);
                out.entropy_at_recurrence = coarse_grain(s, grid, ctx).entropy_macroscopic;
                out.series.rows.push_back(full_row(s, ctx, grid, config.box.initial_region));
                break;
            }
        }
        if (due(t, config.sample_every, max_steps))
            out.series.rows.push_back(full_row(s, ctx, grid, config.box.initial_region));
        if (t == max_steps) break;
        step(s, ctx);
    }
    return out;
}

TwinDivergenceResult run_twin_divergence(const SimConfig& config,
                                         const PerturbationSpec& perturbation) {
    SimContext ctx = SimContext::from_config(config);
    CoarseGrid grid{config.grid.cells_x, config.grid.cells_y};
    ParticleState base = init_state(config, config.seed);
    ParticleState twin = base;
    CollisionTracker tracker;
    tracker.reset(base.size());

    TwinDivergenceResult out;
    out.series.protocol = "fit";
    out.series.config_digest = config_digest(config);
    out.series.seed = config.seed;

    for (std::int64_t t = 0;; ++t) {
        if (t == perturbation.kick_step) {
            twin = apply_kick(twin, perturbation, ctx);
            out.collisions_per_particle_at_kick = tracker.per_particle();
        }
        if (due(t, config.sample_every, config.steps) || t == perturbation.kick_step) {
            SampleRow row = full_row(base, ctx, grid, config.box.initial_region);
            row.step = t;
            row.divergence = divergence(base, twin, ctx, config.mean_speed);
            out.series.rows.push_back(row);
        }
        if (out.first_collision_step < 0 && tracker.total_entries > 0)
            out.first_collision_step = t;
        if (t == config.steps) break;
        step(base, ctx, &tracker);
        step(twin, ctx);
    }
    return out;
}

GrowthFit fit_divergence_growth(const ExperimentSeries& series, const StepWindow& window,
                                std::int64_t kick_step) {
    std::vector<double> t, d;
    double t0 = static_cast<double>(kick_step);
    double d0 = -1.0;
    for (const auto& row : series.rows) {
        if (!row.divergence) continue;
        if (row.step == kick_step) d0 = *row.divergence;
        if (row.step < window.start || row.step > window.end) continue;
        if (*row.divergence <= 0.0)
            throw std::invalid_argument("fit window contains non-positive divergence values");
        t.push_back(static_cast<double>(row.step));
        d.push_back(*row.divergence);
    }
    if (t.size() < 3) throw std::invalid_argument("fit window holds fewer than 3 samples");
    if (d0 <= 0.0) {
        // no sample exactly at the kick: anchor at the first window sample
        t0 = t.front();
        d0 = d.front();
    }

    const std::size_t n = t.size();

    // linear through the kick point: d = d0 + c (t - t0)
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = t[i] - t0;
        sxx += x * x;
        sxy += x * (d[i] - d0);
    }
    double c = sxx > 0.0 ? sxy / sxx : 0.0;
    double mean_d = 0.0;
    for (double v : d) mean_d += v;
    mean_d /= static_cast<double>(n);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = d0 + c * (t[i] - t0);
        ss_res += (d[i] - fit) * (d[i] - fit);
        ss_tot += (d[i] - mean_d) * (d[i] - mean_d);
    }
    double r2_lin = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

    // exponential: ordinary least squares on ln d
    double sx = 0.0, sy = 0.0, sxx2 = 0.0, sxy2 = 0.0;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::log(d[i]);
        sx += t[i];
        sy += y[i];
        sxx2 += t[i] * t[i];
        sxy2 += t[i] * y[i];
    }
    double denom = static_cast<double>(n) * sxx2 - sx * sx;
    double slope = denom != 0.0 ? (static_cast<double>(n) * sxy2 - sx * sy) / denom : 0.0;
    double intercept = (sy - slope * sx) / static_cast<double>(n);
    double mean_y = sy / static_cast<double>(n);
    double ss_res_e = 0.0, ss_tot_e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = intercept + slope * t[i];
        ss_res_e += (y[i] - fit) * (y[i] - fit);
        ss_tot_e += (y[i] - mean_y) * (y[i] - mean_y);
    }
    double r2_exp = ss_tot_e > 0.0 ? 1.0 - ss_res_e / ss_tot_e : 1.0;

    GrowthFit fit;
    fit.r2_linear = r2_lin;
    fit.r2_exponential = r2_exp;
    if (r2_exp > r2_lin) {
        fit.model = GrowthFit::Model::Exponential;
        fit.rate = slope;
    } else {
        fit.model = GrowthFit::Model::Linear;
        fit.rate = c;
    }
    return fit;
}

std::vector<double> smooth_series(const std::vector<double>& values, int window) {
    if (window <= 1 || values.empty()) return values;
    const int half = window / 2;
    const int n = static_cast<int>(values.size());
    std::vector<double> out(values.size());
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - half);
        int hi = std::min(n - 1, i + half);
        double acc = 0.0;
        for (int j = lo; j <= hi; ++j) acc += values[j];
        out[i] = acc / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::optional<std::size_t> first_persistent_slope(const std::vector<double>& smoothed,
                                                  bool positive, int persistence) {
    if (smoothed.size() < 2) return std::nullopt;
    const std::size_t gaps = smoothed.size() - 1;
    std::size_t run = 0;
    for (std::size_t g = 0; g < gaps; ++g) {
        double slope = smoothed[g + 1] - smoothed[g];
        bool ok = positive ? slope > 0.0 : slope < 0.0;
        if (ok) {
            ++run;
            if (run >= static_cast<std::size_t>(persistence)) return g + 1 - run;
        } else {
            run = 0;
        }
    }
    return std::nullopt;
}

std::optional<std::int64_t> relaxation_step(const std::vector<std::int64_t>& steps,
                                            const std::vector<double>& values,
                                            std::size_t from_index, int smoothing_window,
                                            double fraction) {
    if (steps.size() != values.size() || values.empty()) return std::nullopt;
    std::vector<double> smoothed = smooth_series(values, smoothing_window);
    std::size_t tail = std::max<std::size_t>(1, smoothed.size() / 10);
    double plateau = 0.0;
    for (std::size_t i = smoothed.size() - tail; i < smoothed.size(); ++i) plateau += smoothed[i];
    plateau /= static_cast<double>(tail);
    const double threshold = fraction * plateau;
    for (std::size_t i = from_index; i < smoothed.size(); ++i)
        if (smoothed[i] >= threshold) return steps[i];
    return std::nullopt;
}

} // namespace revgas
