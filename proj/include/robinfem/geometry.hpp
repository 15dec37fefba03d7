#pragma once

#include "robinfem/vec2.hpp"

#include <string_view>

namespace robinfem {

struct Mesh;

/// Analytic smooth domain with closed-form signed distance, projection and normal.
///
/// UnitDisk is the open unit disk centred at the origin; UnitSquare is (0,1)^2 and
/// exists so that polygon-exact consistency can be checked (Omega_h == Omega).
class Domain {
public:
    enum class Kind { UnitDisk, UnitSquare };

    constexpr explicit Domain(Kind kind) : kind_(kind) {}

    static constexpr Domain unit_disk() { return Domain(Kind::UnitDisk); }
    static constexpr Domain unit_square() { return Domain(Kind::UnitSquare); }

    constexpr Kind kind() const { return kind_; }
    std::string_view name() const;

    /// Half-width of the tube around the boundary in which project() is single valued.
    double projection_tube() const;

    /// Negative inside, positive outside, zero on the boundary.
    double signed_distance(const Vec2& x) const;

    /// Closest point on the boundary. Throws DegenerateProjection at the disk centre
    /// and in the square's exterior corner regions, where no unique normal exists.
    /// Interior points equidistant from two sides of the square resolve to the
    /// lexicographically smaller foot point.
    Vec2 project(const Vec2& x) const;

    /// Outward unit normal at a boundary point; throws NotOnBoundary if |d(p)| > 1e-12.
    Vec2 normal(const Vec2& p) const;

    friend constexpr bool operator==(const Domain&, const Domain&) = default;

private:
    Kind kind_;
};

/// Pointwise boundary-skin measurements over the boundary-edge quadrature points.
struct SkinDiagnostics {
    double max_abs_distance = 0.0;     ///< max |d(x)| for x on Gamma_h
    double max_normal_deviation = 0.0; ///< max |nu_h - nu(pi(x))|
    double max_tstar = 0.0;            ///< max |pi^*(pi(x)) - pi(x)|; equals max_abs_distance on Gamma_h
};

SkinDiagnostics skin_diagnostics(const Domain& domain, const Mesh& mesh);

} // namespace robinfem
