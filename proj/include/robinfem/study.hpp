#pragma once

#include "robinfem/analysis.hpp"
#include "robinfem/geometry.hpp"
#include "robinfem/problems.hpp"
#include "robinfem/solver.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace robinfem {

struct StudyConfig {
    std::string problem = "sinsin";
    Scheme scheme;
    int levels = 4;
    SolverConfig solver;
    Execution execution = Execution::Parallel;
    ErrorQuadrature quadrature;
    /// The dense coercivity check runs when the dof count is at most this.
    int eigen_check_limit = 400;
    std::optional<std::filesystem::path> csv;
    std::optional<std::filesystem::path> svg;
    std::optional<std::filesystem::path> mesh_out; ///< finest mesh

    /// Throws InvalidParameter.
    void validate() const;
};

/// Per-level quantities that are not errors.
struct LevelDiagnostics {
    int triangles = 0;
    double min_angle_degrees = 0.0;
    SkinDiagnostics skin;
    double symmetry_defect = 0.0; ///< max |A - A^T| / max |A|
    SolveReport solve;
    std::optional<double> min_eigenvalue;
};

struct LevelResult {
    ErrorReport report;
    LevelDiagnostics diagnostics;
    std::vector<double> solution;
};

/// Assemble, solve and measure on one mesh.
LevelResult solve_level(const ProblemPreset& preset, const Mesh& mesh, const Scheme& scheme,
                        const SolverConfig& solver = {}, Execution exec = Execution::Parallel,
                        ErrorQuadrature quad = {}, int eigen_check_limit = 400);

struct StudyResult {
    std::vector<ErrorReport> reports;
    std::vector<LevelDiagnostics> diagnostics;
};

/// Runs the refinement sequence and writes the requested CSV, SVG and mesh files.
/// A partially written output never replaces an existing file.
StudyResult run_convergence(const StudyConfig& config);

/// One solve; writes `index value` lines to solution_out when given.
LevelResult run_single(const ProblemPreset& preset, const Mesh& mesh, const Scheme& scheme,
                       const SolverConfig& solver = {},
                       const std::optional<std::filesystem::path>& solution_out = std::nullopt);

std::string format_csv(std::span<const ErrorReport> reports);
std::string render_svg(std::span<const ErrorReport> reports, const std::string& title);
std::string format_solution(std::span<const double> x);

/// Writes to a sibling temporary file and renames it into place. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace robinfem
