#include "robinfem/geometry.hpp"

#include "robinfem/errors.hpp"
#include "robinfem/felib.hpp"
#include "robinfem/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace robinfem {

namespace {

constexpr double kOnBoundaryTol = 1e-12;

struct SquareSide {
    double distance; // unsigned distance from an interior point to the side's line
    Vec2 foot;
    Vec2 normal;
};

// Sides ordered left, bottom, right, top so that exact ties on the foot point
// (the corners) still resolve deterministically.
std::array<SquareSide, 4> square_sides(const Vec2& x) {
    return {{
        {std::abs(x.x), {0.0, x.y}, {-1.0, 0.0}},
        {std::abs(x.y), {x.x, 0.0}, {0.0, -1.0}},
        {std::abs(1.0 - x.x), {1.0, x.y}, {1.0, 0.0}},
        {std::abs(1.0 - x.y), {x.x, 1.0}, {0.0, 1.0}},
    }};
}

bool lex_less(const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

const SquareSide& nearest_side(const std::array<SquareSide, 4>& sides) {
    const SquareSide* best = &sides[0];
    for (const auto& s : sides) {
        if (s.distance < best->distance ||
            (s.distance == best->distance && lex_less(s.foot, best->foot))) {
            best = &s;
        }
    }
    return *best;
}

bool inside_closed_square(const Vec2& x) {
    return x.x >= 0.0 && x.x <= 1.0 && x.y >= 0.0 && x.y <= 1.0;
}

} // namespace

std::string_view Domain::name() const {
    return kind_ == Kind::UnitDisk ? "unit_disk" : "unit_square";
}

double Domain::projection_tube() const {
    return kind_ == Kind::UnitDisk ? 0.5 : 0.25;
}

double Domain::signed_distance(const Vec2& x) const {
    if (kind_ == Kind::UnitDisk) {
        return norm(x) - 1.0;
    }
    if (inside_closed_square(x)) {
        return -std::min({x.x, 1.0 - x.x, x.y, 1.0 - x.y});
    }
    const double dx = std::max({0.0, -x.x, x.x - 1.0});
    const double dy = std::max({0.0, -x.y, x.y - 1.0});
    return std::hypot(dx, dy);
}

Vec2 Domain::project(const Vec2& x) const {
    if (kind_ == Kind::UnitDisk) {
        const double r = norm(x);
        if (r == 0.0) {
            throw DegenerateProjection("projection onto the unit circle is undefined at the centre");
        }
        return (1.0 / r) * x;
    }
    if (inside_closed_square(x)) {
        return nearest_side(square_sides(x)).foot;
    }
    const bool out_x = x.x < 0.0 || x.x > 1.0;
    const bool out_y = x.y < 0.0 || x.y > 1.0;
    if (out_x && out_y) {
        throw DegenerateProjection("point projects onto a corner of the unit square");
    }
    return {std::clamp(x.x, 0.0, 1.0), std::clamp(x.y, 0.0, 1.0)};
}

Vec2 Domain::normal(const Vec2& p) const {
    if (std::abs(signed_distance(p)) > kOnBoundaryTol) {
        throw NotOnBoundary("normal requested away from the boundary");
    }
    if (kind_ == Kind::UnitDisk) {
        return (1.0 / norm(p)) * p;
    }
    return nearest_side(square_sides(p)).normal;
}

SkinDiagnostics skin_diagnostics(const Domain& domain, const Mesh& mesh) {
    const LineRule& rule = edge_rule(9);
    SkinDiagnostics diag;
    for (const Edge& e : mesh.boundary_edges) {
        const Vec2 a = mesh.vertices[e.vertices[0]];
        const Vec2 b = mesh.vertices[e.vertices[1]];
        for (const double t : rule.points) {
            const Vec2 x = a + t * (b - a);
            const double d = std::abs(domain.signed_distance(x));
            const Vec2 nu = domain.normal(domain.project(x));
            diag.max_abs_distance = std::max(diag.max_abs_distance, d);
            diag.max_normal_deviation = std::max(diag.max_normal_deviation, norm(e.normal - nu));
        }
    }
    diag.max_tstar = diag.max_abs_distance;
    return diag;
}

} // namespace robinfem
