#include "revgas/config.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>

#include <json.hpp>

namespace revgas {
namespace {

using nlohmann::json;

const std::set<std::string> kTopLevelKeys = {
    "n_particles", "box", "initial_region", "particle_radius", "repulsion_strength",
    "cutoff", "dt", "steps", "sample_every", "grid", "mode", "fixed_point_scale",
    "mean_speed", "seed"};

bool integral(double x) { return std::floor(x) == x && std::isfinite(x); }

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where, std::vector<std::string>& issues) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            issues.push_back("unknown key '" + (where.empty() ? it.key() : where + "." + it.key()) + "'");
    }
}

double get_num(const json& j, const std::string& key, double fallback, bool required,
               std::vector<std::string>& issues) {
    if (!j.contains(key)) {
        if (required) issues.push_back("missing required key '" + key + "'");
        return fallback;
    }
    if (!j.at(key).is_number()) {
        issues.push_back("key '" + key + "' must be a number");
        return fallback;
    }
    return j.at(key).get<double>();
}

} // namespace

SimConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!j.is_object()) throw ConfigError({"top level must be a JSON object"});

    std::vector<std::string> issues;
    require_keys(j, kTopLevelKeys, "", issues);

    SimConfig c;
    double n = get_num(j, "n_particles", 1, true, issues);
    if (!integral(n) || n < 1) issues.push_back("n_particles must be an integer >= 1");
    else c.n_particles = static_cast<std::int64_t>(n);

    if (j.contains("box") && j.at("box").is_object()) {
        const auto& b = j.at("box");
        require_keys(b, {"width", "height"}, "box", issues);
        c.box.width = get_num(b, "width", 1.0, true, issues);
        c.box.height = get_num(b, "height", 1.0, true, issues);
    } else {
        issues.push_back("missing required object 'box' with width, height");
    }
    if (c.box.width <= 0.0) issues.push_back("box.width must be > 0");
    if (c.box.height <= 0.0) issues.push_back("box.height must be > 0");

    if (j.contains("initial_region") && j.at("initial_region").is_object()) {
        const auto& r = j.at("initial_region");
        require_keys(r, {"x0", "y0", "x1", "y1"}, "initial_region", issues);
        c.box.initial_region.x0 = get_num(r, "x0", 0.0, true, issues);
        c.box.initial_region.y0 = get_num(r, "y0", 0.0, true, issues);
        c.box.initial_region.x1 = get_num(r, "x1", 0.0, true, issues);
        c.box.initial_region.y1 = get_num(r, "y1", 0.0, true, issues);
    } else {
        issues.push_back("missing required object 'initial_region' with x0, y0, x1, y1");
    }
    {
        const Rect& r = c.box.initial_region;
        if (r.degenerate()) issues.push_back("initial_region must have positive width and height");
        if (r.x0 < 0.0 || r.y0 < 0.0 || r.x1 > c.box.width || r.y1 > c.box.height)
            issues.push_back("initial_region must be contained in the box");
    }

    c.particle_radius = get_num(j, "particle_radius", 0.01, true, issues);
    if (c.particle_radius < 0.0) issues.push_back("particle_radius must be >= 0");
    c.repulsion_strength = get_num(j, "repulsion_strength", 5.0, true, issues);
    if (c.repulsion_strength < 0.0) issues.push_back("repulsion_strength must be >= 0");
    c.cutoff = get_num(j, "cutoff", 0.03, true, issues);
    if (c.cutoff <= 0.0) issues.push_back("cutoff must be > 0");
    if (c.cutoff < 2.0 * c.particle_radius)
        issues.push_back("cutoff must be >= 2 * particle_radius");

    c.dt = get_num(j, "dt", c.dt, true, issues);
    if (c.dt <= 0.0) issues.push_back("dt must be > 0");

    double steps = get_num(j, "steps", 1000, true, issues);
    if (!integral(steps) || steps < 0) issues.push_back("steps must be an integer >= 0");
    else c.steps = static_cast<std::int64_t>(steps);

    double se = get_num(j, "sample_every", 10, false, issues);
    if (!integral(se) || se < 1) issues.push_back("sample_every must be an integer >= 1");
    else c.sample_every = static_cast<std::int64_t>(se);

    if (j.contains("grid")) {
        if (!j.at("grid").is_object()) {
            issues.push_back("grid must be an object with cells_x, cells_y");
        } else {
            const auto& g = j.at("grid");
            require_keys(g, {"cells_x", "cells_y"}, "grid", issues);
            double gx = get_num(g, "cells_x", 16, true, issues);
            double gy = get_num(g, "cells_y", 16, true, issues);
            if (!integral(gx) || gx < 1) issues.push_back("grid.cells_x must be an integer >= 1");
            else c.grid.cells_x = static_cast<int>(gx);
            if (!integral(gy) || gy < 1) issues.push_back("grid.cells_y must be an integer >= 1");
            else c.grid.cells_y = static_cast<int>(gy);
        }
    }
    if (c.grid.cells_x * c.grid.cells_y < 2)
        issues.push_back("grid must have cells_x * cells_y >= 2");

    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) {
            issues.push_back("mode must be a string");
        } else {
            std::string m = j.at("mode").get<std::string>();
            if (m == "fixed_reversible") c.mode = IntegratorKind::FixedReversible;
            else if (m == "float_reference") c.mode = IntegratorKind::FloatReference;
            else issues.push_back("mode must be 'fixed_reversible' or 'float_reference', got '" + m + "'");
        }
    }

    double fps = get_num(j, "fixed_point_scale", 4294967296.0, false, issues);
    if (!integral(fps) || fps < 1) issues.push_back("fixed_point_scale must be an integer >= 1");
    else c.fixed_point_scale = static_cast<std::int64_t>(fps);

    c.mean_speed = get_num(j, "mean_speed", 1.0, false, issues);
    if (c.mean_speed <= 0.0) issues.push_back("mean_speed must be > 0");

    double seed = get_num(j, "seed", 0, true, issues);
    if (!integral(seed) || seed < 0) issues.push_back("seed must be a non-negative integer");
    else c.seed = static_cast<std::uint64_t>(seed);

    // fixed-point representability: drift must be an exact integer addition
    if (c.mode == IntegratorKind::FixedReversible && c.dt > 0.0 && c.fixed_point_scale >= 1) {
        double ps = static_cast<double>(c.fixed_point_scale) / c.dt;
        if (!integral(ps) || ps * c.dt != static_cast<double>(c.fixed_point_scale)) {
            issues.push_back("fixed_point_scale / dt must be an exact integer (position scale)");
        } else {
            double wi = c.box.width * ps;
            double hi = c.box.height * ps;
            if (!integral(wi) || !integral(hi))
                issues.push_back("box extents must be exactly representable at the position scale");
            else if (wi > 9.0e15 || hi > 9.0e15)
                issues.push_back("box extent exceeds the representable fixed-point range");
            else {
                if (static_cast<std::int64_t>(wi) % c.grid.cells_x != 0)
                    issues.push_back("grid.cells_x must divide the box width exactly at the position scale");
                if (static_cast<std::int64_t>(hi) % c.grid.cells_y != 0)
                    issues.push_back("grid.cells_y must divide the box height exactly at the position scale");
            }
        }
    }

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return c;
}

std::string emit_config(const SimConfig& c) {
    json j;
    j["n_particles"] = c.n_particles;
    j["box"] = {{"width", c.box.width}, {"height", c.box.height}};
    j["initial_region"] = {{"x0", c.box.initial_region.x0},
                           {"y0", c.box.initial_region.y0},
                           {"x1", c.box.initial_region.x1},
                           {"y1", c.box.initial_region.y1}};
    j["particle_radius"] = c.particle_radius;
    j["repulsion_strength"] = c.repulsion_strength;
    j["cutoff"] = c.cutoff;
    j["dt"] = c.dt;
    j["steps"] = c.steps;
    j["sample_every"] = c.sample_every;
    j["grid"] = {{"cells_x", c.grid.cells_x}, {"cells_y", c.grid.cells_y}};
    j["mode"] = c.mode == IntegratorKind::FixedReversible ? "fixed_reversible" : "float_reference";
    j["fixed_point_scale"] = c.fixed_point_scale;
    j["mean_speed"] = c.mean_speed;
    j["seed"] = c.seed;
    return j.dump(2);
}

std::string config_digest(const SimConfig& c) {
    std::string text = emit_config(c);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace revgas
