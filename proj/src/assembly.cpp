#include "robinfem/assembly.hpp"

#include "robinfem/errors.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace robinfem {

namespace {

struct EdgePoint {
    Vec2 x;
    double weight; // includes the edge length
};

std::vector<EdgePoint> edge_points(const Mesh& mesh, const Edge& edge, int order) {
    const LineRule& rule = edge_rule(order);
    const Vec2 a = mesh.vertices[edge.vertices[0]];
    const Vec2 b = mesh.vertices[edge.vertices[1]];
    std::vector<EdgePoint> pts(rule.points.size());
    for (std::size_t q = 0; q < pts.size(); ++q) {
        pts[q] = {a + rule.points[q] * (b - a), rule.weights[q] * edge.h};
    }
    return pts;
}

/// Values and physical gradients of the local basis of one element at a physical point.
struct Trace {
    std::array<double, kMaxLocalDofs> phi;
    std::array<Vec2, kMaxLocalDofs> grad;
};

Trace trace_at(const ElementMap& map, const ReferenceBasis& basis, const Vec2& x) {
    const Vec2 ref = map.to_reference(x);
    Trace t{basis.eval(ref), basis.eval_grad(ref)};
    for (int i = 0; i < basis.size(); ++i) {
        t.grad[i] = map.gradient(t.grad[i]);
    }
    return t;
}

LocalMatrix boundary_norm_block(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis, double epsilon,
                                bool mesh_dependent, int edge_order) {
    const int n = basis.size();
    LocalMatrix m{n, n, {}};
    const ElementMap map(mesh, edge.elements[0]);
    const double trace_w = 1.0 / (epsilon + edge.h);
    for (const EdgePoint& p : edge_points(mesh, edge, edge_order)) {
        const Trace t = trace_at(map, basis, p.x);
        for (int i = 0; i < n; ++i) {
            const double dni = dot(t.grad[i], edge.normal);
            for (int j = 0; j < n; ++j) {
                double v = trace_w * t.phi[i] * t.phi[j];
                if (mesh_dependent) {
                    v += edge.h * dni * dot(t.grad[j], edge.normal);
                }
                m(i, j) += p.weight * v;
            }
        }
    }
    return m;
}

LocalMatrix interior_norm_block(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis, bool mesh_dependent,
                                int edge_order) {
    const int n = basis.size();
    LocalMatrix m{2 * n, 2 * n, {}};
    const ElementMap map0(mesh, edge.elements[0]);
    const ElementMap map1(mesh, edge.elements[1]);
    for (const EdgePoint& p : edge_points(mesh, edge, edge_order)) {
        const Trace t0 = trace_at(map0, basis, p.x);
        const Trace t1 = trace_at(map1, basis, p.x);
        std::array<double, 2 * kMaxLocalDofs> s{};
        std::array<Vec2, 2 * kMaxLocalDofs> g{};
        for (int i = 0; i < n; ++i) {
            s[i] = t0.phi[i];
            s[n + i] = -t1.phi[i];
            g[i] = 0.5 * t0.grad[i];
            g[n + i] = 0.5 * t1.grad[i];
        }
        for (int i = 0; i < 2 * n; ++i) {
            for (int j = 0; j < 2 * n; ++j) {
                double v = s[i] * s[j] / edge.h;
                if (mesh_dependent) {
                    v += edge.h * dot(g[i], g[j]);
                }
                m(i, j) += p.weight * v;
            }
        }
    }
    return m;
}

void scatter(Triplets& t, std::size_t offset, const LocalMatrix& m, std::span<const int> row_dofs,
             std::span<const int> col_dofs) {
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            const std::size_t s = offset + static_cast<std::size_t>(i * m.cols + j);
            t.rows[s] = row_dofs[static_cast<std::size_t>(i)];
            t.cols[s] = col_dofs[static_cast<std::size_t>(j)];
            t.values[s] = m(i, j);
        }
    }
}

std::array<int, 2 * kMaxLocalDofs> pair_dofs(const DofMap& dofmap, const Edge& edge) {
    std::array<int, 2 * kMaxLocalDofs> d{};
    const auto d0 = dofmap.dofs(edge.elements[0]);
    const auto d1 = dofmap.dofs(edge.elements[1]);
    const int n = dofmap.local_size;
    for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] = d0[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(n + i)] = d1[static_cast<std::size_t>(i)];
    }
    return d;
}

// Drivers write into a preallocated slot range so that the triplet order (and
// therefore the compressed sum) does not depend on the thread schedule.
void fill_volume(Triplets& t, std::size_t base, const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                 int tri_order, Execution exec) {
    const auto nt = static_cast<int>(mesh.triangles.size());
    const auto block = static_cast<std::size_t>(basis.size() * basis.size());
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
    for (int k = 0; k < nt; ++k) {
        const LocalMatrix m = kernels::element_stiffness(mesh, k, basis, tri_order);
        scatter(t, base + static_cast<std::size_t>(k) * block, m, dofmap.dofs(k), dofmap.dofs(k));
    }
}

void fill_boundary(Triplets& t, std::size_t base, const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                   const Scheme& scheme, int edge_order, Execution exec) {
    const auto nb = static_cast<int>(mesh.boundary_edges.size());
    const auto block = static_cast<std::size_t>(basis.size() * basis.size());
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
    for (int e = 0; e < nb; ++e) {
        const Edge& edge = mesh.boundary_edges[static_cast<std::size_t>(e)];
        const LocalMatrix m = kernels::boundary_block(mesh, edge, basis, scheme, edge_order);
        const auto dofs = dofmap.dofs(edge.elements[0]);
        scatter(t, base + static_cast<std::size_t>(e) * block, m, dofs, dofs);
    }
}

void fill_interior(Triplets& t, std::size_t base, const Mesh& mesh, const DofMap& dofmap,
                   const ReferenceBasis& basis, double gamma, int edge_order, Execution exec) {
    const auto ni = static_cast<int>(mesh.interior_edges.size());
    const int n2 = 2 * basis.size();
    const auto block = static_cast<std::size_t>(n2 * n2);
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
    for (int e = 0; e < ni; ++e) {
        const Edge& edge = mesh.interior_edges[static_cast<std::size_t>(e)];
        const LocalMatrix m = kernels::interior_penalty_block(mesh, edge, basis, gamma, edge_order);
        const auto dofs = pair_dofs(dofmap, edge);
        const std::span<const int> d(dofs.data(), static_cast<std::size_t>(n2));
        scatter(t, base + static_cast<std::size_t>(e) * block, m, d, d);
    }
}

std::size_t volume_size(const Mesh& mesh, const ReferenceBasis& basis) {
    return mesh.triangles.size() * static_cast<std::size_t>(basis.size() * basis.size());
}
std::size_t boundary_size(const Mesh& mesh, const ReferenceBasis& basis) {
    return mesh.boundary_edges.size() * static_cast<std::size_t>(basis.size() * basis.size());
}
std::size_t interior_size(const Mesh& mesh, const ReferenceBasis& basis) {
    return mesh.interior_edges.size() * static_cast<std::size_t>(4 * basis.size() * basis.size());
}

} // namespace

std::string_view to_string(Method m) {
    return m == Method::Nitsche ? "nitsche" : "sipdg";
}

void Scheme::validate() const {
    if (degree != 1 && degree != 2) {
        throw InvalidParameter("degree must be 1 or 2");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidParameter("epsilon must be positive and finite");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw InvalidParameter("gamma must be nonnegative and finite");
    }
    if (method == Method::SIPDG && gamma == 0.0) {
        throw InvalidParameter("SIPDG needs gamma > 0");
    }
}

BoundaryWeights boundary_weights(double epsilon, double gamma, double h) {
    const double gh = gamma * h;
    const double denom = epsilon + gh;
    return {gh / denom, 1.0 / denom, epsilon * (gh / denom), epsilon / denom};
}

AssemblyQuadrature assembly_quadrature(int degree) {
    return degree == 1 ? AssemblyQuadrature{4, 5} : AssemblyQuadrature{6, 9};
}

namespace kernels {

LocalMatrix element_stiffness(const Mesh& mesh, int element, const ReferenceBasis& basis, int tri_order) {
    const int n = basis.size();
    LocalMatrix m{n, n, {}};
    const ElementMap map(mesh, element);
    const QuadratureRule& rule = triangle_rule(tri_order);
    const double det = std::abs(map.det());
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        auto g = basis.eval_grad(rule.points[q]);
        for (int i = 0; i < n; ++i) {
            g[i] = map.gradient(g[i]);
        }
        const double w = rule.weights[q] * det;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                m(i, j) += w * dot(g[i], g[j]);
            }
        }
    }
    return m;
}

LocalMatrix boundary_block(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis, const Scheme& scheme,
                           int edge_order) {
    const int n = basis.size();
    LocalMatrix m{n, n, {}};
    const ElementMap map(mesh, edge.elements[0]);
    const BoundaryWeights bw = boundary_weights(scheme.epsilon, scheme.gamma, edge.h);
    for (const EdgePoint& p : edge_points(mesh, edge, edge_order)) {
        const Trace t = trace_at(map, basis, p.x);
        std::array<double, kMaxLocalDofs> dn{};
        for (int i = 0; i < n; ++i) {
            dn[i] = dot(t.grad[i], edge.normal);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double v = -bw.consistency * (dn[j] * t.phi[i] + t.phi[j] * dn[i]) +
                                 bw.mass * t.phi[j] * t.phi[i] - bw.flux * dn[j] * dn[i];
                m(i, j) += p.weight * v;
            }
        }
    }
    return m;
}

LocalMatrix interior_penalty_block(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis, double gamma,
                                   int edge_order) {
    const int n = basis.size();
    LocalMatrix m{2 * n, 2 * n, {}};
    const ElementMap map0(mesh, edge.elements[0]);
    const ElementMap map1(mesh, edge.elements[1]);
    const double penalty = 1.0 / (gamma * edge.h);
    for (const EdgePoint& p : edge_points(mesh, edge, edge_order)) {
        const Trace t0 = trace_at(map0, basis, p.x);
        const Trace t1 = trace_at(map1, basis, p.x);
        // Jump [[phi]] = s n1 and normal component of the average {grad phi} . n1 = g.
        std::array<double, 2 * kMaxLocalDofs> s{};
        std::array<double, 2 * kMaxLocalDofs> g{};
        for (int i = 0; i < n; ++i) {
            s[i] = t0.phi[i];
            s[n + i] = -t1.phi[i];
            g[i] = 0.5 * dot(t0.grad[i], edge.normal);
            g[n + i] = 0.5 * dot(t1.grad[i], edge.normal);
        }
        for (int i = 0; i < 2 * n; ++i) {
            for (int j = 0; j < 2 * n; ++j) {
                m(i, j) += p.weight * (-g[j] * s[i] - s[j] * g[i] + penalty * s[j] * s[i]);
            }
        }
    }
    return m;
}

std::array<double, kMaxLocalDofs> element_load(const Mesh& mesh, int element, const ReferenceBasis& basis,
                                               const ScalarField& f, int tri_order) {
    std::array<double, kMaxLocalDofs> b{};
    const ElementMap map(mesh, element);
    const QuadratureRule& rule = triangle_rule(tri_order);
    const double det = std::abs(map.det());
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const auto phi = basis.eval(rule.points[q]);
        const double w = rule.weights[q] * det * f(map.to_physical(rule.points[q]));
        for (int i = 0; i < basis.size(); ++i) {
            b[i] += w * phi[i];
        }
    }
    return b;
}

std::array<double, kMaxLocalDofs> boundary_load(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis,
                                                const Scheme& scheme, const ProblemData& data, int edge_order) {
    std::array<double, kMaxLocalDofs> b{};
    const ElementMap map(mesh, edge.elements[0]);
    const BoundaryWeights bw = boundary_weights(scheme.epsilon, scheme.gamma, edge.h);
    for (const EdgePoint& p : edge_points(mesh, edge, edge_order)) {
        const Trace t = trace_at(map, basis, p.x);
        const double u0 = data.u0(p.x);
        const double g = data.g(p.x);
        for (int i = 0; i < basis.size(); ++i) {
            const double dn = dot(t.grad[i], edge.normal);
            b[i] += p.weight * (bw.mass * u0 * t.phi[i] - bw.consistency * u0 * dn + bw.data_g * g * t.phi[i] -
                                bw.flux * g * dn);
        }
    }
    return b;
}

} // namespace kernels

Triplets assemble_volume(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis, Execution exec) {
    Triplets t;
    t.resize(volume_size(mesh, basis));
    fill_volume(t, 0, mesh, dofmap, basis, assembly_quadrature(basis.degree()).triangle, exec);
    return t;
}

Triplets assemble_nitsche_boundary(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                                   const Scheme& scheme, Execution exec) {
    scheme.validate();
    Triplets t;
    t.resize(boundary_size(mesh, basis));
    fill_boundary(t, 0, mesh, dofmap, basis, scheme, assembly_quadrature(basis.degree()).edge, exec);
    return t;
}

Triplets assemble_interior_penalty(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                                   const Scheme& scheme, Execution exec) {
    if (scheme.method != Method::SIPDG) {
        throw SchemeMismatch("interior penalty terms belong to the SIPDG scheme");
    }
    scheme.validate();
    Triplets t;
    t.resize(interior_size(mesh, basis));
    fill_interior(t, 0, mesh, dofmap, basis, scheme.gamma, assembly_quadrature(basis.degree()).edge, exec);
    return t;
}

std::vector<double> assemble_load(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                                  const Scheme& scheme, const ProblemData& data, Execution exec) {
    scheme.validate();
    const AssemblyQuadrature quad = assembly_quadrature(basis.degree());
    const int n = basis.size();
    const auto nt = static_cast<int>(mesh.triangles.size());
    const auto nb = static_cast<int>(mesh.boundary_edges.size());

    std::vector<std::array<double, kMaxLocalDofs>> vol(static_cast<std::size_t>(nt));
    std::vector<std::array<double, kMaxLocalDofs>> bnd(static_cast<std::size_t>(nb));
#pragma omp parallel if (exec == Execution::Parallel)
    {
#pragma omp for schedule(static) nowait
        for (int k = 0; k < nt; ++k) {
            vol[static_cast<std::size_t>(k)] = kernels::element_load(mesh, k, basis, data.f, quad.triangle);
        }
#pragma omp for schedule(static)
        for (int e = 0; e < nb; ++e) {
            bnd[static_cast<std::size_t>(e)] = kernels::boundary_load(
                mesh, mesh.boundary_edges[static_cast<std::size_t>(e)], basis, scheme, data, quad.edge);
        }
    }

    std::vector<double> rhs(static_cast<std::size_t>(dofmap.num_dofs), 0.0);
    for (int k = 0; k < nt; ++k) {
        const auto dofs = dofmap.dofs(k);
        for (int i = 0; i < n; ++i) {
            rhs[dofs[i]] += vol[static_cast<std::size_t>(k)][i];
        }
    }
    for (int e = 0; e < nb; ++e) {
        const auto dofs = dofmap.dofs(mesh.boundary_edges[static_cast<std::size_t>(e)].elements[0]);
        for (int i = 0; i < n; ++i) {
            rhs[dofs[i]] += bnd[static_cast<std::size_t>(e)][i];
        }
    }
    return rhs;
}

SparseSystem assemble(const Mesh& mesh, const Scheme& scheme, const ProblemData& data, Execution exec) {
    scheme.validate();
    const ReferenceBasis basis(scheme.degree);
    const AssemblyQuadrature quad = assembly_quadrature(scheme.degree);
    SparseSystem sys;
    sys.dofmap = make_dofmap(mesh, scheme.space(), scheme.degree);

    const std::size_t nv = volume_size(mesh, basis);
    const std::size_t nb = boundary_size(mesh, basis);
    const std::size_t ni = scheme.method == Method::SIPDG ? interior_size(mesh, basis) : 0;
    Triplets t;
    t.resize(nv + nb + ni);
    fill_volume(t, 0, mesh, sys.dofmap, basis, quad.triangle, exec);
    fill_boundary(t, nv, mesh, sys.dofmap, basis, scheme, quad.edge, exec);
    if (scheme.method == Method::SIPDG) {
        fill_interior(t, nv + nb, mesh, sys.dofmap, basis, scheme.gamma, quad.edge, exec);
    }
    sys.matrix = compress(sys.dofmap.num_dofs, t, exec);
    sys.rhs = assemble_load(mesh, sys.dofmap, basis, scheme, data, exec);
    return sys;
}

SparseSystem assemble_reference(const Mesh& mesh, const Scheme& scheme, const ProblemData& data) {
    scheme.validate();
    const ReferenceBasis basis(scheme.degree);
    const AssemblyQuadrature quad = assembly_quadrature(scheme.degree);
    SparseSystem sys;
    sys.dofmap = make_dofmap(mesh, scheme.space(), scheme.degree);
    const int n = basis.size();

    std::map<std::pair<int, int>, double> entries;
    const auto add = [&](const LocalMatrix& m, std::span<const int> dofs) {
        for (int i = 0; i < m.rows; ++i) {
            for (int j = 0; j < m.cols; ++j) {
                entries[{dofs[i], dofs[j]}] += m(i, j);
            }
        }
    };
    sys.rhs.assign(static_cast<std::size_t>(sys.dofmap.num_dofs), 0.0);

    for (int k = 0; k < static_cast<int>(mesh.triangles.size()); ++k) {
        add(kernels::element_stiffness(mesh, k, basis, quad.triangle), sys.dofmap.dofs(k));
    }
    for (const Edge& e : mesh.boundary_edges) {
        add(kernels::boundary_block(mesh, e, basis, scheme, quad.edge), sys.dofmap.dofs(e.elements[0]));
    }
    if (scheme.method == Method::SIPDG) {
        for (const Edge& e : mesh.interior_edges) {
            const auto dofs = pair_dofs(sys.dofmap, e);
            add(kernels::interior_penalty_block(mesh, e, basis, scheme.gamma, quad.edge),
                std::span<const int>(dofs.data(), static_cast<std::size_t>(2 * n)));
        }
    }
    for (int k = 0; k < static_cast<int>(mesh.triangles.size()); ++k) {
        const auto b = kernels::element_load(mesh, k, basis, data.f, quad.triangle);
        const auto dofs = sys.dofmap.dofs(k);
        for (int i = 0; i < n; ++i) {
            sys.rhs[dofs[i]] += b[i];
        }
    }
    for (const Edge& e : mesh.boundary_edges) {
        const auto b = kernels::boundary_load(mesh, e, basis, scheme, data, quad.edge);
        const auto dofs = sys.dofmap.dofs(e.elements[0]);
        for (int i = 0; i < n; ++i) {
            sys.rhs[dofs[i]] += b[i];
        }
    }

    CsrMatrix& a = sys.matrix;
    a.n = sys.dofmap.num_dofs;
    a.row_ptr.assign(static_cast<std::size_t>(a.n) + 1, 0);
    for (const auto& [key, value] : entries) {
        ++a.row_ptr[static_cast<std::size_t>(key.first) + 1];
        a.col.push_back(key.second);
        a.val.push_back(value);
    }
    for (int i = 0; i < a.n; ++i) {
        a.row_ptr[i + 1] += a.row_ptr[i];
    }
    return sys;
}

CsrMatrix assemble_norm_matrix(const Mesh& mesh, const DofMap& dofmap, const Scheme& scheme, bool mesh_dependent,
                               Execution exec) {
    const ReferenceBasis basis(dofmap.degree);
    const AssemblyQuadrature quad = assembly_quadrature(dofmap.degree);
    const int n = basis.size();
    const std::size_t nv = volume_size(mesh, basis);
    const std::size_t nb = boundary_size(mesh, basis);
    const bool broken = dofmap.kind == SpaceKind::Discontinuous;
    const std::size_t ni = broken ? interior_size(mesh, basis) : 0;

    Triplets t;
    t.resize(nv + nb + ni);
    fill_volume(t, 0, mesh, dofmap, basis, quad.triangle, exec);
    const auto n_bnd = static_cast<int>(mesh.boundary_edges.size());
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
    for (int e = 0; e < n_bnd; ++e) {
        const Edge& edge = mesh.boundary_edges[static_cast<std::size_t>(e)];
        const LocalMatrix m = boundary_norm_block(mesh, edge, basis, scheme.epsilon, mesh_dependent, quad.edge);
        const auto dofs = dofmap.dofs(edge.elements[0]);
        scatter(t, nv + static_cast<std::size_t>(e) * static_cast<std::size_t>(n * n), m, dofs, dofs);
    }
    if (broken) {
        const auto n_int = static_cast<int>(mesh.interior_edges.size());
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
        for (int e = 0; e < n_int; ++e) {
            const Edge& edge = mesh.interior_edges[static_cast<std::size_t>(e)];
            const LocalMatrix m = interior_norm_block(mesh, edge, basis, mesh_dependent, quad.edge);
            const auto dofs = pair_dofs(dofmap, edge);
            const std::span<const int> d(dofs.data(), static_cast<std::size_t>(2 * n));
            scatter(t, nv + nb + static_cast<std::size_t>(e) * static_cast<std::size_t>(4 * n * n), m, d, d);
        }
    }
    return compress(dofmap.num_dofs, t, exec);
}

double consistency_residual(const Mesh& mesh, const Scheme& scheme, const ProblemData& data, Execution exec) {
    if (!data.exact) {
        throw MissingExactSolution("consistency residual needs the exact solution");
    }
    scheme.validate();
    const ExactSolution& u = *data.exact;
    const ReferenceBasis basis(scheme.degree);
    const AssemblyQuadrature quad = assembly_quadrature(scheme.degree);
    const DofMap dofmap = make_dofmap(mesh, scheme.space(), scheme.degree);
    const int n = basis.size();

    // a_h(u~, phi_i): volume and boundary parts; l_h is subtracted afterwards.
    std::vector<double> r(static_cast<std::size_t>(dofmap.num_dofs), 0.0);
    const QuadratureRule& rule = triangle_rule(quad.triangle);
    for (int k = 0; k < static_cast<int>(mesh.triangles.size()); ++k) {
        const ElementMap map(mesh, k);
        const double det = std::abs(map.det());
        const auto dofs = dofmap.dofs(k);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const Vec2 gu = u.gradient(map.to_physical(rule.points[q]));
            const auto g = basis.eval_grad(rule.points[q]);
            for (int i = 0; i < n; ++i) {
                r[dofs[i]] += rule.weights[q] * det * dot(gu, map.gradient(g[i]));
            }
        }
    }
    for (const Edge& e : mesh.boundary_edges) {
        const ElementMap map(mesh, e.elements[0]);
        const BoundaryWeights bw = boundary_weights(scheme.epsilon, scheme.gamma, e.h);
        const auto dofs = dofmap.dofs(e.elements[0]);
        for (const EdgePoint& p : edge_points(mesh, e, quad.edge)) {
            const Trace t = trace_at(map, basis, p.x);
            const double uv = u.value(p.x);
            const double du = dot(u.gradient(p.x), e.normal);
            for (int i = 0; i < n; ++i) {
                const double dn = dot(t.grad[i], e.normal);
                r[dofs[i]] += p.weight * (-bw.consistency * (du * t.phi[i] + uv * dn) + bw.mass * uv * t.phi[i] -
                                          bw.flux * du * dn);
            }
        }
    }
    if (scheme.method == Method::SIPDG) {
        // u~ is continuous: only -<{grad u~}, [[phi]]> survives.
        for (const Edge& e : mesh.interior_edges) {
            const ElementMap map0(mesh, e.elements[0]);
            const ElementMap map1(mesh, e.elements[1]);
            const auto d0 = dofmap.dofs(e.elements[0]);
            const auto d1 = dofmap.dofs(e.elements[1]);
            for (const EdgePoint& p : edge_points(mesh, e, quad.edge)) {
                const double du = dot(u.gradient(p.x), e.normal);
                const Trace t0 = trace_at(map0, basis, p.x);
                const Trace t1 = trace_at(map1, basis, p.x);
                for (int i = 0; i < n; ++i) {
                    r[d0[i]] -= p.weight * du * t0.phi[i];
                    r[d1[i]] += p.weight * du * t1.phi[i];
                }
            }
        }
    }
    const std::vector<double> load = assemble_load(mesh, dofmap, basis, scheme, data, exec);
    const CsrMatrix gram = assemble_norm_matrix(mesh, dofmap, scheme, false, exec);
    double worst = 0.0;
    for (int i = 0; i < dofmap.num_dofs; ++i) {
        worst = std::max(worst, std::abs(r[i] - load[i]) / std::sqrt(gram.at(i, i)));
    }
    return worst;
}

} // namespace robinfem
