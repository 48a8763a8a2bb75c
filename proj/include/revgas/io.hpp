#pragma once

#include <map>
#include <string>
#include <vector>

#include "revgas/experiments.hpp"

namespace revgas {

// Shortest round-trip decimal rendering (std::to_chars); byte-deterministic.
std::string render_double(double v);

// CSV with the fixed header
//   step,entropy_macro,entropy_volume,return_fraction,divergence,energy
// absent channels as empty fields, LF line endings, rows ordered by step.
std::string series_to_csv(const ExperimentSeries& series);

void write_file(const std::string& path, const std::string& content);

struct RunSummary {
    std::string protocol;
    std::string config_digest;
    std::uint64_t seed = 0;
    // headline scalars; absent values simply omitted
    std::map<std::string, double> scalars;
    std::map<std::string, std::string> labels;
    std::vector<std::string> series_paths;
};

std::string summary_to_json(const RunSummary& summary);

} // namespace revgas
