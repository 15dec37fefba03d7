#pragma once

#include "robinfem/felib.hpp"
#include "robinfem/mesh.hpp"
#include "robinfem/sparse.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace robinfem {

enum class Method { Nitsche, SIPDG };

std::string_view to_string(Method m);

/// Discretisation choice: Nitsche-continuous or SIPDG, P1 or P2, Robin parameter
/// epsilon and penalty/weighting parameter gamma.
struct Scheme {
    Method method = Method::Nitsche;
    int degree = 1;
    double epsilon = 1.0;
    double gamma = 0.1;

    /// Throws InvalidParameter. gamma == 0 is accepted for Nitsche (the classical
    /// penalty-free Robin form) but not for SIPDG, whose jump penalty is 1/(gamma h_E).
    void validate() const;
    SpaceKind space() const {
        return method == Method::Nitsche ? SpaceKind::Continuous : SpaceKind::Discontinuous;
    }
};

/// Edge weights of b_h and l_h for one boundary edge.
struct BoundaryWeights {
    double consistency; ///< gamma h / (eps + gamma h)
    double mass;        ///< 1 / (eps + gamma h)
    double flux;        ///< eps gamma h / (eps + gamma h)
    double data_g;      ///< eps / (eps + gamma h)
};

BoundaryWeights boundary_weights(double epsilon, double gamma, double h);

struct ExactSolution {
    std::function<double(const Vec2&)> value;
    std::function<Vec2(const Vec2&)> gradient;
};

/// Source and Robin data as global analytic fields (evaluable on Omega_h and Gamma_h).
struct ProblemData {
    ScalarField f;
    ScalarField u0;
    ScalarField g;
    std::optional<ExactSolution> exact;
};

struct SparseSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    DofMap dofmap;
};

/// Quadrature orders used by assembly for a given polynomial degree.
struct AssemblyQuadrature {
    int triangle;
    int edge;
};
AssemblyQuadrature assembly_quadrature(int degree);

/// Dense local matrix, row-major, at most 12 x 12 (two P2 elements).
struct LocalMatrix {
    int rows = 0;
    int cols = 0;
    std::array<double, 144> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
};

/// Element-level kernels. Shared by every driver below.
namespace kernels {

LocalMatrix element_stiffness(const Mesh& mesh, int element, const ReferenceBasis& basis, int tri_order);

/// b_h restricted to one boundary edge, local dofs of its element.
LocalMatrix boundary_block(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis,
                           const Scheme& scheme, int edge_order);

/// J_h on one interior edge; local dofs of elements[0] first, then elements[1].
LocalMatrix interior_penalty_block(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis,
                                   double gamma, int edge_order);

std::array<double, kMaxLocalDofs> element_load(const Mesh& mesh, int element, const ReferenceBasis& basis,
                                               const ScalarField& f, int tri_order);

std::array<double, kMaxLocalDofs> boundary_load(const Mesh& mesh, const Edge& edge, const ReferenceBasis& basis,
                                                const Scheme& scheme, const ProblemData& data, int edge_order);

} // namespace kernels

Triplets assemble_volume(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                         Execution exec = Execution::Parallel);

Triplets assemble_nitsche_boundary(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                                   const Scheme& scheme, Execution exec = Execution::Parallel);

/// Throws SchemeMismatch unless scheme.method is SIPDG.
Triplets assemble_interior_penalty(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                                   const Scheme& scheme, Execution exec = Execution::Parallel);

std::vector<double> assemble_load(const Mesh& mesh, const DofMap& dofmap, const ReferenceBasis& basis,
                                  const Scheme& scheme, const ProblemData& data,
                                  Execution exec = Execution::Parallel);

/// a_h^N or a_h^DG together with l_h.
SparseSystem assemble(const Mesh& mesh, const Scheme& scheme, const ProblemData& data,
                      Execution exec = Execution::Parallel);

/// Straightforward serial assembly into an ordered map; kept as the reference the
/// parallel pipeline is tested against.
SparseSystem assemble_reference(const Mesh& mesh, const Scheme& scheme, const ProblemData& data);

/// Gram matrix of ||.||_# (mesh_dependent = false) or ||.||_{#,h} (true) on the FE space.
CsrMatrix assemble_norm_matrix(const Mesh& mesh, const DofMap& dofmap, const Scheme& scheme, bool mesh_dependent,
                               Execution exec = Execution::Parallel);

/// max_i |a_h(u~, chi_i) - l_h(chi_i)| / ||chi_i||_# over the FE basis, with u~ entering
/// through its analytic values and gradients. Throws MissingExactSolution.
double consistency_residual(const Mesh& mesh, const Scheme& scheme, const ProblemData& data,
                            Execution exec = Execution::Parallel);

} // namespace robinfem
