#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace revgas {

struct Vec2i {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const Vec2i&, const Vec2i&) = default;
};

struct Vec2d {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2d&, const Vec2d&) = default;
};

// Axis-aligned rectangle, [x0,x1) x [y0,y1) for containment tests.
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(double x, double y) const {
        return x >= x0 && x < x1 && y >= y0 && y < y1;
    }
    bool degenerate() const { return width() <= 0.0 || height() <= 0.0; }
    friend bool operator==(const Rect&, const Rect&) = default;
};

struct BoxGeometry {
    double width = 1.0;
    double height = 1.0;
    Rect initial_region;
    friend bool operator==(const BoxGeometry&, const BoxGeometry&) = default;
};

// Short-range pairwise repulsion, U(r) = k (1 - r/rc)^2 for r < rc.
// Finite at contact, force and potential vanish smoothly at the cutoff.
struct ForceField {
    double particle_radius = 0.01;
    double repulsion_strength = 5.0;
    double cutoff = 0.03;
    friend bool operator==(const ForceField&, const ForceField&) = default;
};

enum class IntegratorKind { FixedReversible, FloatReference };

struct IntegratorMode {
    IntegratorKind kind = IntegratorKind::FixedReversible;
    double dt = 0.0009765625;                    // 2^-10
    std::int64_t fixed_point_scale = 4294967296; // velocity units per sim unit, 2^32
    friend bool operator==(const IntegratorMode&, const IntegratorMode&) = default;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += "; ";
            s += e;
        }
        return s;
    }
    std::vector<std::string> issues_;
};

class PackingError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class OverflowError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace revgas
