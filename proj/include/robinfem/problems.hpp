#pragma once

#include "robinfem/assembly.hpp"
#include "robinfem/geometry.hpp"

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace robinfem {

/// Closed-form exact solutions. `u` is templated so that tests can differentiate
/// it automatically; `grad` and `laplacian` are the hand-derived counterparts.
namespace formulas {

struct SinSin {
    template <class T>
    static T u(const T& x, const T& y) {
        using std::sin;
        return sin(x) * sin(y);
    }
    static Vec2 grad(const Vec2& p) {
        return {std::cos(p.x) * std::sin(p.y), std::sin(p.x) * std::cos(p.y)};
    }
    static double laplacian(const Vec2& p) { return -2.0 * std::sin(p.x) * std::sin(p.y); }
};

/// Distance to (-1, 0), a point of the unit circle: in H^2 but not H^4 of the disk.
struct SqrtSingular {
    template <class T>
    static T u(const T& x, const T& y) {
        using std::sqrt;
        return sqrt((x + 1.0) * (x + 1.0) + y * y);
    }
    static Vec2 grad(const Vec2& p) {
        const double r = std::hypot(p.x + 1.0, p.y);
        return {(p.x + 1.0) / r, p.y / r};
    }
    static double laplacian(const Vec2& p) { return 1.0 / std::hypot(p.x + 1.0, p.y); }
};

struct RadialExp {
    template <class T>
    static T u(const T& x, const T& y) {
        using std::exp;
        return exp(-(x * x) - y * y);
    }
    static Vec2 grad(const Vec2& p) {
        const double e = std::exp(-p.x * p.x - p.y * p.y);
        return {-2.0 * p.x * e, -2.0 * p.y * e};
    }
    static double laplacian(const Vec2& p) {
        const double r2 = p.x * p.x + p.y * p.y;
        return (4.0 * r2 - 4.0) * std::exp(-r2);
    }
};

struct Linear {
    template <class T>
    static T u(const T& x, const T& y) {
        return 1.0 + 2.0 * x - 3.0 * y;
    }
    static Vec2 grad(const Vec2&) { return {2.0, -3.0}; }
    static double laplacian(const Vec2&) { return 0.0; }
};

/// Harmonic quadratic; reproduced exactly by P2.
struct Quadratic {
    template <class T>
    static T u(const T& x, const T& y) {
        return x * x - y * y + x * y - x;
    }
    static Vec2 grad(const Vec2& p) { return {2.0 * p.x + p.y - 1.0, -2.0 * p.y + p.x}; }
    static double laplacian(const Vec2&) { return 0.0; }
};

} // namespace formulas

/// A manufactured test problem on one of the analytic domains.
///
/// Boundary data follow the Robin relation du/dnu + u/eps = u0/eps + g with nu the
/// exact normal of the domain at the projected point: u0 = u + eps (du/dnu - g).
struct ProblemPreset {
    std::string name;
    Domain domain = Domain::unit_disk();
    std::string regularity;
    std::function<double(const Vec2&)> u;
    std::function<Vec2(const Vec2&)> grad;
    std::function<double(const Vec2&)> laplacian;
    /// g(x, du/dnu). Empty means g = 0.
    std::function<double(const Vec2&, double)> g;
};

/// Registered presets in a fixed order.
std::span<const ProblemPreset> problem_registry();

/// Throws InvalidParameter for an unknown name.
const ProblemPreset& find_problem(std::string_view name);

/// Name, domain and regularity of every preset, one per line.
std::string list_problems();

/// f = -lap u, u0, g and the exact solution for the given epsilon.
/// Throws InvalidParameter if epsilon <= 0.
ProblemData make_problem_data(const ProblemPreset& preset, double epsilon);

} // namespace robinfem
