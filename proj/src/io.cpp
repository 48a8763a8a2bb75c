#include "revgas/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace revgas {

std::string render_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("failed to render a floating point value");
    return std::string(buf, ptr);
}

std::string series_to_csv(const ExperimentSeries& series) {
    std::string out = "step,entropy_macro,entropy_volume,return_fraction,divergence,energy\n";
    auto field = [](const std::optional<double>& v) {
        return v ? render_double(*v) : std::string();
    };
    for (const auto& row : series.rows) {
        out += std::to_string(row.step);
        out += ',';
        out += field(row.entropy_macro);
        out += ',';
        out += field(row.entropy_volume);
        out += ',';
        out += field(row.return_fraction);
        out += ',';
        out += field(row.divergence);
        out += ',';
        out += field(row.energy);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string summary_to_json(const RunSummary& summary) {
    nlohmann::json j;
    j["protocol"] = summary.protocol;
    j["config_digest"] = summary.config_digest;
    j["seed"] = summary.seed;
    for (const auto& [k, v] : summary.scalars) j[k] = v;
    for (const auto& [k, v] : summary.labels) j[k] = v;
    j["series"] = summary.series_paths;
    return j.dump(2) + "\n";
}

} // namespace revgas
