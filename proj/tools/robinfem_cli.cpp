// robinfem: Nitsche / SIPDG solves and convergence studies for the Robin-Poisson problem.
//
//   robinfem list
//   robinfem solve --problem sinsin --scheme n --degree 1 --size 16
//   robinfem study --problem sinsin --scheme dg --levels 5 --csv out.csv --svg out.svg

#include "robinfem/errors.hpp"
#include "robinfem/study.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>

namespace {

using namespace robinfem;

struct CommonOptions {
    std::string problem = "sinsin";
    std::string scheme = "n";
    int degree = 1;
    double epsilon = 1.0;
    double gamma = 0.1;
    std::string solver = "cg";
    double tol = 1e-10;
    int max_iterations = 0;
    std::optional<std::string> mesh_out;
};

void add_common(CLI::App* app, CommonOptions& o) {
    app->add_option("--problem", o.problem, "Problem preset (see `list`)");
    app->add_option("--scheme", o.scheme, "n (Nitsche) or dg (SIPDG)")
        ->check(CLI::IsMember({"n", "dg"}));
    app->add_option("--degree", o.degree, "Polynomial degree")->check(CLI::IsMember({1, 2}));
    app->add_option("--epsilon", o.epsilon, "Robin parameter");
    app->add_option("--gamma", o.gamma, "Penalty / weighting parameter");
    app->add_option("--solver", o.solver, "cg or dense")->check(CLI::IsMember({"cg", "dense"}));
    app->add_option("--tol", o.tol, "Relative residual tolerance");
    app->add_option("--max-iterations", o.max_iterations, "CG iteration cap (0 = default)");
    app->add_option("--mesh-out", o.mesh_out, "Write the (finest) mesh to this file");
}

Scheme to_scheme(const CommonOptions& o) {
    Scheme s;
    s.method = o.scheme == "dg" ? Method::SIPDG : Method::Nitsche;
    s.degree = o.degree;
    s.epsilon = o.epsilon;
    s.gamma = o.gamma;
    s.validate();
    return s;
}

SolverConfig to_solver(const CommonOptions& o) {
    SolverConfig c;
    c.method = o.solver == "dense" ? SolverConfig::Method::DenseCholesky : SolverConfig::Method::ConjugateGradient;
    c.rel_tolerance = o.tol;
    c.max_iterations = o.max_iterations;
    c.validate();
    return c;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.3f}", *v) : std::string("-"); }

void print_reports(const std::vector<ErrorReport>& reports, const std::vector<LevelDiagnostics>& diags) {
    fmt::print("{:>5} {:>11} {:>8} {:>12} {:>12} {:>7} {:>7} {:>6} {:>11} {:>11}\n", "level", "h_max", "dofs",
               "err_energy", "err_L2", "eoc_E", "eoc_L2", "cg_it", "sym_defect", "min_eig");
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const ErrorReport& r = reports[i];
        const LevelDiagnostics& d = diags[i];
        fmt::print("{:>5} {:>11.4e} {:>8} {:>12.4e} {:>12.4e} {:>7} {:>7} {:>6} {:>11.2e} {:>11}\n", r.level, r.h_max,
                   r.dof_count, r.err_energy, r.err_l2, fmt_opt(r.eoc_energy), fmt_opt(r.eoc_l2), d.solve.iterations,
                   d.symmetry_defect, d.min_eigenvalue ? fmt::format("{:.3e}", *d.min_eigenvalue) : "-");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nitsche and SIPDG finite elements for the Poisson problem with Robin boundary conditions"};
    app.require_subcommand(1);

    app.add_subcommand("list", "List problem presets");

    CommonOptions solve_opts;
    std::optional<int> size;
    std::optional<int> level;
    std::optional<std::string> mesh_in;
    std::optional<std::string> solution_out;
    std::optional<std::string> matrix_out;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve on a single mesh");
    add_common(solve_cmd, solve_opts);
    auto* size_opt = solve_cmd->add_option("--size", size, "Rings (disk) or cells per side (square)");
    auto* level_opt = solve_cmd->add_option("--level", level, "Refinement level (size 4*2^level)");
    auto* mesh_opt = solve_cmd->add_option("--mesh", mesh_in, "Read the mesh from this file");
    size_opt->excludes(level_opt)->excludes(mesh_opt);
    level_opt->excludes(mesh_opt);
    solve_cmd->add_option("--solution-out", solution_out, "Write `index value` lines");
    solve_cmd->add_option("--matrix-out", matrix_out, "Write the matrix as `i j value` triplets");

    CommonOptions study_opts;
    int levels = 4;
    std::optional<std::string> csv;
    std::optional<std::string> svg;
    CLI::App* study_cmd = app.add_subcommand("study", "Convergence study over the refinement sequence");
    add_common(study_cmd, study_opts);
    study_cmd->add_option("--levels", levels, "Number of refinement levels (>= 2)");
    study_cmd->add_option("--csv", csv, "CSV output path");
    study_cmd->add_option("--svg", svg, "SVG plot output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("list")) {
            fmt::print("{}", list_problems());
            return 0;
        }
        if (app.got_subcommand("solve")) {
            const ProblemPreset& preset = find_problem(solve_opts.problem);
            const Scheme scheme = to_scheme(solve_opts);
            const SolverConfig solver = to_solver(solve_opts);
            Mesh mesh;
            if (mesh_in) {
                mesh = read_mesh(*mesh_in);
            } else {
                const int lvl = level.value_or(0);
                mesh = generate_mesh(preset.domain, size.value_or(refinement_size(lvl)), lvl);
            }
            if (matrix_out) {
                write_triplets(assemble(mesh, scheme, make_problem_data(preset, scheme.epsilon)).matrix,
                               *matrix_out);
            }
            const LevelResult r = run_single(preset, mesh, scheme, solver,
                                             solution_out ? std::optional<std::filesystem::path>(*solution_out)
                                                          : std::nullopt);
            if (solve_opts.mesh_out) {
                write_mesh(mesh, *solve_opts.mesh_out);
            }
            print_reports({r.report}, {r.diagnostics});
            const SkinDiagnostics& s = r.diagnostics.skin;
            fmt::print("err_N {:.6e}  jump {:.6e}  skin |d| {:.3e}  normal dev {:.3e}  min angle {:.2f}\n",
                       r.report.err_n, r.report.jump_seminorm, s.max_abs_distance, s.max_normal_deviation,
                       r.diagnostics.min_angle_degrees);
            return 0;
        }
        StudyConfig cfg;
        cfg.problem = study_opts.problem;
        cfg.scheme = to_scheme(study_opts);
        cfg.solver = to_solver(study_opts);
        cfg.levels = levels;
        if (csv) {
            cfg.csv = *csv;
        }
        if (svg) {
            cfg.svg = *svg;
        }
        if (study_opts.mesh_out) {
            cfg.mesh_out = *study_opts.mesh_out;
        }
        const StudyResult result = run_convergence(cfg);
        print_reports(result.reports, result.diagnostics);
        return 0;
    } catch (const SolverError& e) {
        fmt::print(stderr, "solver failure: {}\n", e.what());
        return 2;
    } catch (const Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
