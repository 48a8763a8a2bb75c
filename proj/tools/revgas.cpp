#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "revgas/experiments.hpp"
#include "revgas/integrator.hpp"
#include "revgas/io.hpp"

namespace fs = std::filesystem;
using namespace revgas;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

SimConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
    SimConfig c = parse_config(read_file(path));
    if (seed_override) c.seed = *seed_override;
    return c;
}

void emit(const fs::path& out_dir, const ExperimentSeries& series, RunSummary& summary,
          const std::string& csv_name = "series.csv") {
    fs::create_directories(out_dir);
    const fs::path csv_path = out_dir / csv_name;
    write_file(csv_path.string(), series_to_csv(series));
    summary.series_paths.push_back(csv_name); // relative, so identical runs match byte-for-byte
}

void finish(const fs::path& out_dir, const RunSummary& summary) {
    write_file((out_dir / "summary.json").string(), summary_to_json(summary));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"revgas: reversible 2D gas simulator and experiment harness"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string config_path, config_b_path, out_dir = ".";
    std::optional<std::uint64_t> seed_override;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        auto* opt = sub->add_option("--config", config_path, "run configuration (JSON)");
        if (needs_config) opt->required();
        sub->add_option("--seed", seed_override, "override the config seed");
        sub->add_option("--out", out_dir, "output directory");
    };

    auto* cmd_expand = app.add_subcommand("expand", "free expansion from the initial region");
    add_common(cmd_expand);

    auto* cmd_losch = app.add_subcommand("loschmidt", "velocity-reversal echo, optional kick");
    add_common(cmd_losch);
    std::int64_t reversal_step = 0, kick_step = 0;
    double epsilon = 0.0;
    cmd_losch->add_option("--reversal-step", reversal_step, "step at which to reverse velocities")
        ->required();
    cmd_losch->add_option("--epsilon", epsilon, "kick magnitude (0 = unperturbed)");
    cmd_losch->add_option("--kick-step", kick_step, "step at which the kick is applied");

    auto* cmd_sync = app.add_subcommand("sync", "two-vessel time-arrow synchronization");
    add_common(cmd_sync);
    cmd_sync->add_option("--config-b", config_b_path, "vessel B configuration (JSON)")->required();
    double lambda = 0.0;
    std::int64_t prep_steps = 0;
    std::optional<std::int64_t> coupling_start, coupling_end;
    cmd_sync->add_option("--lambda", lambda, "inter-vessel coupling strength");
    cmd_sync->add_option("--prep-steps", prep_steps, "preparation steps for vessel B")->required();
    cmd_sync->add_option("--coupling-start", coupling_start, "first joint step with coupling on");
    cmd_sync->add_option("--coupling-end", coupling_end, "first joint step with coupling off");

    auto* cmd_rec = app.add_subcommand("recurrence", "wait for a Poincare return (N <= 3)");
    add_common(cmd_rec);
    std::int64_t max_steps = 1000000;
    double radius = 1e-3;
    cmd_rec->add_option("--max-steps", max_steps, "step budget");
    cmd_rec->add_option("--radius", radius, "recurrence radius (normalized phase distance)");

    auto* cmd_fit = app.add_subcommand("fit", "twin-run divergence growth-law classification");
    add_common(cmd_fit);
    double fit_epsilon = 1e-6;
    std::int64_t fit_kick_step = 0;
    std::optional<std::int64_t> window_start, window_end;
    cmd_fit->add_option("--epsilon", fit_epsilon, "twin kick magnitude");
    cmd_fit->add_option("--kick-step", fit_kick_step, "step at which the twin is kicked");
    cmd_fit->add_option("--window-start", window_start, "fit window start (defaults to kick step)");
    cmd_fit->add_option("--window-end", window_end, "fit window end (defaults to last step)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        const fs::path out(out_dir);
        if (cmd_expand->parsed()) {
            SimConfig c = load_config(config_path, seed_override);
            FreeExpansionResult r = run_free_expansion(c);
            RunSummary s{"expand", r.series.config_digest, c.seed};
            const SampleRow& last = r.series.rows.back();
            s.scalars["final_entropy_macro"] = *last.entropy_macro;
            s.scalars["final_entropy_volume"] = *last.entropy_volume;
            s.scalars["final_return_fraction"] = *last.return_fraction;
            s.scalars["final_energy"] = *last.energy;
            s.scalars["collisions_per_particle"] = r.collisions_per_particle;
            emit(out, r.series, s);
            finish(out, s);
        } else if (cmd_losch->parsed()) {
            SimConfig c = load_config(config_path, seed_override);
            PerturbationSpec pert{epsilon, kick_step, std::nullopt, c.seed};
            LoschmidtResult r = run_loschmidt(c, reversal_step, pert);
            RunSummary s{"loschmidt", r.series.config_digest, c.seed};
            const SampleRow& last = r.series.rows.back();
            s.scalars["final_entropy_macro"] = *last.entropy_macro;
            s.scalars["final_return_fraction"] = *last.return_fraction;
            s.scalars["initial_return_fraction"] = *r.series.rows.front().return_fraction;
            s.scalars["collisions_per_particle_at_reversal"] = r.collisions_per_particle_at_reversal;
            ParticleState mirror = r.initial_state;
            reverse_velocities(mirror);
            s.labels["exact_return"] = (r.final_state.pos == mirror.pos &&
                                        r.final_state.vel == mirror.vel &&
                                        r.final_state.fpos == mirror.fpos &&
                                        r.final_state.fvel == mirror.fvel)
                                           ? "true"
                                           : "false";
            emit(out, r.series, s);
            finish(out, s);
        } else if (cmd_sync->parsed()) {
            SimConfig a = load_config(config_path, seed_override);
            SimConfig b = parse_config(read_file(config_b_path));
            const std::int64_t joint_steps = a.steps;
            CouplingSpec coupling{lambda, coupling_start.value_or(0),
                                  coupling_end.value_or(joint_steps)};
            SyncResult r = run_two_vessel_sync(a, b, prep_steps, coupling, joint_steps);
            RunSummary s{"sync", r.series_a.config_digest, a.seed};
            s.labels["config_digest_b"] = r.series_b.config_digest;
            if (r.sync_step) s.scalars["sync_step"] = static_cast<double>(*r.sync_step);
            else s.labels["sync_step"] = "none";
            s.scalars["b_compact_entropy"] = r.b_compact_entropy;
            double bmin = *r.series_b.rows.front().entropy_macro;
            for (const auto& row : r.series_b.rows) bmin = std::min(bmin, *row.entropy_macro);
            s.scalars["b_entropy_min"] = bmin;
            emit(out, r.series_a, s, "series_a.csv");
            emit(out, r.series_b, s, "series_b.csv");
            finish(out, s);
        } else if (cmd_rec->parsed()) {
            SimConfig c = load_config(config_path, seed_override);
            RecurrenceResult r = run_recurrence(c, max_steps, radius);
            RunSummary s{"recurrence", r.series.config_digest, c.seed};
            if (r.recurrence_step) {
                s.scalars["recurrence_step"] = static_cast<double>(*r.recurrence_step);
                s.scalars["entropy_at_recurrence"] = r.entropy_at_recurrence;
                s.labels["exact_bit_return"] = r.exact_bit_return ? "true" : "false";
            } else {
                s.labels["recurrence_step"] = "none";
            }
            s.scalars["entropy_initial"] = r.entropy_initial;
            emit(out, r.series, s);
            finish(out, s);
        } else if (cmd_fit->parsed()) {
            SimConfig c = load_config(config_path, seed_override);
            PerturbationSpec pert{fit_epsilon, fit_kick_step, std::nullopt, c.seed};
            TwinDivergenceResult r = run_twin_divergence(c, pert);
            StepWindow window{window_start.value_or(fit_kick_step), window_end.value_or(c.steps)};
            GrowthFit fit = fit_divergence_growth(r.series, window, fit_kick_step);
            RunSummary s{"fit", r.series.config_digest, c.seed};
            s.labels["model"] =
                fit.model == GrowthFit::Model::Linear ? "linear" : "exponential";
            s.scalars["rate"] = fit.rate;
            s.scalars["r2_linear"] = fit.r2_linear;
            s.scalars["r2_exponential"] = fit.r2_exponential;
            s.scalars["collisions_per_particle_at_kick"] = r.collisions_per_particle_at_kick;
            s.scalars["first_collision_step"] = static_cast<double>(r.first_collision_step);
            emit(out, r.series, s);
            finish(out, s);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: runtime: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
