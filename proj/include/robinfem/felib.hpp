#pragma once

#include "robinfem/mesh.hpp"
#include "robinfem/vec2.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace robinfem {

inline constexpr int kMaxLocalDofs = 6;

/// Lagrange basis of degree 1 or 2 on the reference triangle (0,0), (1,0), (0,1).
///
/// Node order: the three vertices, then for P2 the midpoints of local edges
/// (0,1), (1,2), (2,0).
class ReferenceBasis {
public:
    explicit ReferenceBasis(int degree);

    int degree() const { return degree_; }
    int size() const { return degree_ == 1 ? 3 : 6; }

    std::array<double, kMaxLocalDofs> eval(const Vec2& ref) const;
    std::array<Vec2, kMaxLocalDofs> eval_grad(const Vec2& ref) const;

    /// Reference coordinates of node i.
    Vec2 node(int i) const;

private:
    int degree_;
};

struct QuadratureRule {
    int degree = 0; ///< polynomial exactness
    std::vector<Vec2> points;
    std::vector<double> weights; ///< sum to 1/2
};

/// Gauss-Legendre rule on [0,1].
struct LineRule {
    int degree = 0;
    std::vector<double> points;
    std::vector<double> weights; ///< sum to 1
};

/// Symmetric triangle rules exact to degree 1, 2, 4, 6 or 8; throws UnsupportedOrder otherwise.
const QuadratureRule& triangle_rule(int order);

/// n-point Gauss rule with n = order/2 + 1, for orders 0..19.
const LineRule& edge_rule(int order);

/// Affine map from the reference triangle onto a physical triangle.
class ElementMap {
public:
    ElementMap(const Vec2& p0, const Vec2& p1, const Vec2& p2);
    ElementMap(const Mesh& mesh, int element);

    Vec2 to_physical(const Vec2& ref) const;
    Vec2 to_reference(const Vec2& x) const;
    /// Pushes a reference gradient forward: J^{-T} g.
    Vec2 gradient(const Vec2& ref_grad) const;
    double det() const { return det_; }

private:
    Vec2 origin_;
    Vec2 col0_, col1_; // columns of J
    double det_;
};

enum class SpaceKind { Continuous, Discontinuous };

/// Global numbering of the V_N / V_DG (degree 1) and V_{N,2} / V_{DG,2} spaces.
struct DofMap {
    SpaceKind kind = SpaceKind::Continuous;
    int degree = 1;
    int num_dofs = 0;
    int local_size = 3;
    std::vector<int> element_dofs; ///< local_size entries per triangle
    /// Continuous P2 only: edge-midpoint dof of unified edge id e is edge_dof_offset + e.
    int edge_dof_offset = -1;

    std::span<const int> dofs(int element) const {
        return {element_dofs.data() + static_cast<std::size_t>(element) * local_size,
                static_cast<std::size_t>(local_size)};
    }
};

DofMap make_dofmap(const Mesh& mesh, SpaceKind kind, int degree);

using ScalarField = std::function<double(const Vec2&)>;

/// Nodal Lagrange interpolation into the space described by dofmap.
std::vector<double> interpolate(const Mesh& mesh, const DofMap& dofmap, const ScalarField& f);

/// Jump and average operators on an edge.
struct EdgeTraces {
    Vec2 jump_v;     ///< v1 n1 + v2 n2; v nu_h on the boundary
    double mean_v;   ///< (v1 + v2)/2; v on the boundary
    double jump_grad; ///< grad v1 . n1 + grad v2 . n2; dv/dnu_h on the boundary
    Vec2 mean_grad;  ///< (grad v1 + grad v2)/2; grad v on the boundary
};

/// Interior edges take two traces (side of elements[0] first), boundary edges one.
/// Throws ArityMismatch otherwise.
EdgeTraces jump_average(const Edge& edge, std::span<const double> values, std::span<const Vec2> gradients);

} // namespace robinfem
