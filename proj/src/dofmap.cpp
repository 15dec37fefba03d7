#include "robinfem/errors.hpp"
#include "robinfem/felib.hpp"

namespace robinfem {

ElementMap::ElementMap(const Vec2& p0, const Vec2& p1, const Vec2& p2)
    : origin_(p0), col0_(p1 - p0), col1_(p2 - p0), det_(cross(col0_, col1_)) {}

ElementMap::ElementMap(const Mesh& mesh, int element)
    : ElementMap(mesh.vertices[mesh.triangles[element][0]], mesh.vertices[mesh.triangles[element][1]],
                 mesh.vertices[mesh.triangles[element][2]]) {}

Vec2 ElementMap::to_physical(const Vec2& ref) const {
    return origin_ + ref.x * col0_ + ref.y * col1_;
}

Vec2 ElementMap::to_reference(const Vec2& x) const {
    const Vec2 d = x - origin_;
    return {cross(d, col1_) / det_, cross(col0_, d) / det_};
}

Vec2 ElementMap::gradient(const Vec2& g) const {
    // J^{-T} g with J = [col0 col1].
    return {(col1_.y * g.x - col0_.y * g.y) / det_, (-col1_.x * g.x + col0_.x * g.y) / det_};
}

DofMap make_dofmap(const Mesh& mesh, SpaceKind kind, int degree) {
    if (degree != 1 && degree != 2) {
        throw InvalidParameter("degree must be 1 or 2");
    }
    DofMap map;
    map.kind = kind;
    map.degree = degree;
    map.local_size = degree == 1 ? 3 : 6;
    const auto nt = static_cast<int>(mesh.triangles.size());
    map.element_dofs.resize(static_cast<std::size_t>(nt) * map.local_size);

    if (kind == SpaceKind::Discontinuous) {
        for (std::size_t i = 0; i < map.element_dofs.size(); ++i) {
            map.element_dofs[i] = static_cast<int>(i);
        }
        map.num_dofs = nt * map.local_size;
        return map;
    }

    const auto nv = static_cast<int>(mesh.vertices.size());
    for (int k = 0; k < nt; ++k) {
        auto* d = map.element_dofs.data() + static_cast<std::size_t>(k) * map.local_size;
        for (int i = 0; i < 3; ++i) {
            d[i] = mesh.triangles[k][i];
        }
        if (degree == 2) {
            for (int l = 0; l < 3; ++l) {
                d[3 + l] = nv + mesh.triangle_edges[k][l];
            }
        }
    }
    map.num_dofs = nv;
    if (degree == 2) {
        map.edge_dof_offset = nv;
        map.num_dofs += static_cast<int>(mesh.num_edges());
    }
    return map;
}

std::vector<double> interpolate(const Mesh& mesh, const DofMap& dofmap, const ScalarField& f) {
    const ReferenceBasis basis(dofmap.degree);
    std::vector<double> out(static_cast<std::size_t>(dofmap.num_dofs), 0.0);
    for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
        const ElementMap map(mesh, static_cast<int>(k));
        const auto dofs = dofmap.dofs(static_cast<int>(k));
        for (int i = 0; i < dofmap.local_size; ++i) {
            out[dofs[i]] = f(map.to_physical(basis.node(i)));
        }
    }
    return out;
}

} // namespace robinfem
