#include "robinfem/study.hpp"

#include "robinfem/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace robinfem {

void StudyConfig::validate() const {
    scheme.validate();
    solver.validate();
    if (levels < 2) {
        throw InvalidParameter(fmt::format("a convergence study needs at least 2 levels, got {}", levels));
    }
    if (scheme.degree != 1 && scheme.degree != 2) {
        throw InvalidParameter("degree must be 1 or 2");
    }
    find_problem(problem);
}

LevelResult solve_level(const ProblemPreset& preset, const Mesh& mesh, const Scheme& scheme,
                        const SolverConfig& solver, Execution exec, ErrorQuadrature quad, int eigen_check_limit) {
    const ProblemData data = make_problem_data(preset, scheme.epsilon);
    const SparseSystem system = assemble(mesh, scheme, data, exec);

    LevelResult out;
    LevelDiagnostics& diag = out.diagnostics;
    diag.triangles = static_cast<int>(mesh.triangles.size());
    diag.min_angle_degrees = min_angle_degrees(mesh);
    diag.skin = skin_diagnostics(preset.domain, mesh);
    diag.symmetry_defect = symmetry_defect(system.matrix);
    if (system.matrix.n <= eigen_check_limit) {
        diag.min_eigenvalue = min_eigenvalue_dense(system.matrix);
    }

    SolveResult sol = solve(system, solver);
    diag.solve = sol.report;
    if (sol.report.min_eigenvalue) {
        diag.min_eigenvalue = sol.report.min_eigenvalue;
    }

    const EnergyError e = energy_error(mesh, system.dofmap, scheme, data, sol.x, quad, exec);
    ErrorReport& r = out.report;
    r.level = mesh.level;
    r.h_max = mesh.h_max;
    r.dof_count = system.dofmap.num_dofs;
    r.err_energy = e.energy;
    r.err_n = e.components.norm_n();
    r.err_l2 = l2_error(mesh, system.dofmap, data, sol.x, quad, exec);
    r.jump_seminorm = std::sqrt(e.components.jump);
    out.solution = std::move(sol.x);
    return out;
}

StudyResult run_convergence(const StudyConfig& config) {
    config.validate();
    const ProblemPreset& preset = find_problem(config.problem);
    SolverConfig solver = config.solver;
    solver.execution = config.execution;

    StudyResult out;
    Mesh finest;
    for (int level = 0; level < config.levels; ++level) {
        Mesh mesh = generate_mesh(preset.domain, refinement_size(level), level);
        LevelResult r = solve_level(preset, mesh, config.scheme, solver, config.execution, config.quadrature,
                                    config.eigen_check_limit);
        out.reports.push_back(r.report);
        out.diagnostics.push_back(r.diagnostics);
        if (level + 1 == config.levels) {
            finest = std::move(mesh);
        }
    }
    attach_eoc(out.reports);

    if (config.csv) {
        write_file_atomic(*config.csv, format_csv(out.reports));
    }
    if (config.svg) {
        const std::string title = fmt::format("{} {} P{} eps={:g} gamma={:g}", preset.name,
                                              to_string(config.scheme.method), config.scheme.degree,
                                              config.scheme.epsilon, config.scheme.gamma);
        write_file_atomic(*config.svg, render_svg(out.reports, title));
    }
    if (config.mesh_out) {
        write_mesh(finest, *config.mesh_out);
    }
    return out;
}

LevelResult run_single(const ProblemPreset& preset, const Mesh& mesh, const Scheme& scheme,
                       const SolverConfig& solver, const std::optional<std::filesystem::path>& solution_out) {
    scheme.validate();
    LevelResult r = solve_level(preset, mesh, scheme, solver, solver.execution);
    if (solution_out) {
        write_file_atomic(*solution_out, format_solution(r.solution));
    }
    return r;
}

} // namespace robinfem
