#pragma once

#include "robinfem/assembly.hpp"
#include "robinfem/felib.hpp"
#include "robinfem/mesh.hpp"

#include <optional>
#include <span>
#include <vector>

namespace robinfem {

/// Quadrature used for error norms; kept well above the assembly orders.
struct ErrorQuadrature {
    int triangle = 6;
    int edge = 9;
};

/// Squared pieces of the mesh-dependent norms of v = u~ - u_h.
///
///   ||v||_N^2      = grad + trace
///   ||v||_{N,h}^2  = ||v||_N^2 + flux
///   ||v||_DG^2     = ||v||_N^2 + jump
///   ||v||_{DG,h}^2 = ||v||_DG^2 + flux + interior_mean_grad
struct NormComponents {
    double grad = 0.0;               ///< sum_K ||grad v||_K^2
    double trace = 0.0;              ///< sum_{E in E_h} ||v||_E^2 / (eps + h_E)
    double flux = 0.0;               ///< sum_{E in E_h} h_E ||dv/dnu_h||_E^2
    double jump = 0.0;               ///< sum_{E in I_h} ||[[v]]||_E^2 / h_E
    double interior_mean_grad = 0.0; ///< sum_{E in I_h} h_E ||{grad v}||_E^2

    double norm_n() const;
    double norm_nh() const;
    double norm_dg() const;
    double norm_dgh() const;
};

struct EnergyError {
    double energy = 0.0; ///< ||.||_{N,h} or ||.||_{DG,h} according to the scheme
    NormComponents components;
    /// Contributions to energy^2; their sum equals energy^2.
    std::vector<double> element_sq;
    std::vector<double> boundary_edge_sq;
    std::vector<double> interior_edge_sq; ///< SIPDG only
};

/// Energy norm of u~ - u_h with u~ evaluated analytically at quadrature points.
/// Throws MissingExactSolution.
EnergyError energy_error(const Mesh& mesh, const DofMap& dofmap, const Scheme& scheme, const ProblemData& data,
                         std::span<const double> solution, ErrorQuadrature quad = {},
                         Execution exec = Execution::Parallel);

/// Same norms applied to the FE function itself.
EnergyError fe_norm(const Mesh& mesh, const DofMap& dofmap, const Scheme& scheme, std::span<const double> coeffs,
                    ErrorQuadrature quad = {}, Execution exec = Execution::Parallel);

/// ||u~ - u_h||_{L2(Omega_h)}. Throws MissingExactSolution.
double l2_error(const Mesh& mesh, const DofMap& dofmap, const ProblemData& data, std::span<const double> solution,
                ErrorQuadrature quad = {}, Execution exec = Execution::Parallel);

/// Errors at or below this are treated as round-off; their EOC is NaN.
inline constexpr double kRoundoffFloor = 1e-13;

/// Pairwise log(e_i/e_{i+1}) / log(h_i/h_{i+1}). Throws DegenerateSequence for fewer
/// than two levels, non-decreasing h, or negative / non-finite errors.
std::vector<double> eoc(std::span<const double> h, std::span<const double> errors);

struct ErrorReport {
    int level = 0;
    double h_max = 0.0;
    int dof_count = 0;
    double err_energy = 0.0;
    double err_n = 0.0;
    double err_l2 = 0.0;
    double jump_seminorm = 0.0; ///< SIPDG: sqrt(sum_I ||[[v]]||^2 / h_E); 0 for Nitsche
    std::optional<double> eoc_energy;
    std::optional<double> eoc_l2;
};

/// Fills eoc_energy / eoc_l2 of reports[1..] from consecutive pairs.
void attach_eoc(std::vector<ErrorReport>& reports);

} // namespace robinfem
