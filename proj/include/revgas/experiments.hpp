#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revgas/entropy.hpp"
#include "revgas/perturbation.hpp"

namespace revgas {

struct SampleRow {
    std::int64_t step = 0;
    std::optional<double> entropy_macro;
    std::optional<double> entropy_volume;
    std::optional<double> return_fraction;
    std::optional<double> divergence;
    std::optional<double> energy;
};

struct ExperimentSeries {
    std::string protocol;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::vector<SampleRow> rows;
};

struct FreeExpansionResult {
    ExperimentSeries series;
    ParticleState final_state;
    double collisions_per_particle = 0.0;
};

struct LoschmidtResult {
    ExperimentSeries series;
    ParticleState initial_state;
    ParticleState final_state;
    double collisions_per_particle_at_reversal = 0.0;
};

struct SyncResult {
    ExperimentSeries series_a;
    ExperimentSeries series_b;
    std::optional<std::int64_t> sync_step;
    std::vector<double> joint_energy; // one entry per sample, coupling term included
    double b_compact_entropy = 0.0;   // macroscopic entropy of B's own t=0 state
};

struct RecurrenceResult {
    ExperimentSeries series;
    std::optional<std::int64_t> recurrence_step;
    bool exact_bit_return = false;
    double entropy_at_recurrence = 0.0;
    double entropy_initial = 0.0;
};

struct TwinDivergenceResult {
    ExperimentSeries series; // divergence channel plus base-run entropies
    std::int64_t first_collision_step = -1; // -1 = none observed
    double collisions_per_particle_at_kick = 0.0;
};

struct GrowthFit {
    enum class Model { Linear, Exponential };
    Model model = Model::Linear;
    double rate = 0.0;
    double r2_linear = 0.0;
    double r2_exponential = 0.0;
};

struct StepWindow {
    std::int64_t start = 0;
    std::int64_t end = 0; // inclusive
};

FreeExpansionResult run_free_expansion(const SimConfig& config);

// Evolve to reversal_step, reverse all velocities, apply the kick at its
// scheduled step, evolve reversal_step more. return_fraction is tracked
// against the initial region throughout.
LoschmidtResult run_loschmidt(const SimConfig& config, std::int64_t reversal_step,
                              const PerturbationSpec& perturbation);

// Vessel A starts expanding; vessel B is prepared by expanding a compact
// state for preparation_steps and reversing, so its isolated future shrinks.
// Joint evolution under coupled_step for joint_steps. sync_step is the first
// sampled step after which B's smoothed entropy slope stays positive for the
// persistence window.
SyncResult run_two_vessel_sync(const SimConfig& configA, const SimConfig& configB,
                               std::int64_t preparation_steps, const CouplingSpec& coupling,
                               std::int64_t joint_steps, int smoothing_window = 50,
                               int persistence_samples = 100);

// N <= 3 guard; recurrence_step is the first step where the normalized
// phase-space distance to the initial state drops below radius.
RecurrenceResult run_recurrence(const SimConfig& config, std::int64_t max_steps,
                                double radius = 1e-3,
                                const ParticleState* initial_override = nullptr);

// Base trajectory plus a kicked twin; samples the divergence channel.
TwinDivergenceResult run_twin_divergence(const SimConfig& config,
                                         const PerturbationSpec& perturbation);

// Least-squares fits over the window: linear through the kick point and
// exponential (line in log space). Model with the higher R^2 wins.
// Throws if any divergence value in the window is non-positive.
GrowthFit fit_divergence_growth(const ExperimentSeries& series, const StepWindow& window,
                                std::int64_t kick_step);

// Centered moving average over `window` samples (clamped at the ends).
std::vector<double> smooth_series(const std::vector<double>& values, int window);

// First index i such that sign(smoothed slope) == sign_positive holds for
// `persistence` consecutive sample gaps starting at i. nullopt if never.
std::optional<std::size_t> first_persistent_slope(const std::vector<double>& smoothed,
                                                  bool positive, int persistence);

// First step at which the smoothed channel reaches `fraction` of its plateau
// (mean of the last tenth of samples), searching from `from_index` onward.
std::optional<std::int64_t> relaxation_step(const std::vector<std::int64_t>& steps,
                                            const std::vector<double>& values,
                                            std::size_t from_index, int smoothing_window,
                                            double fraction = 0.95);

} // namespace revgas
