#include "robinfem/solver.hpp"

#include "robinfem/errors.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <chrono>
#include <cmath>

namespace robinfem {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double true_relative_residual(const CsrMatrix& a, std::span<const double> b, std::span<const double> x,
                              Execution exec) {
    std::vector<double> ax(b.size());
    spmv(a, x, ax, exec);
    double rr = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double d = b[i] - ax[i];
        rr += d * d;
    }
    const double bn = norm2(b);
    return bn == 0.0 ? std::sqrt(rr) : std::sqrt(rr) / bn;
}

Eigen::MatrixXd dense_symmetric(const CsrMatrix& a) {
    const std::vector<double> d = to_dense(a, true);
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d.data(), a.n,
                                                                                                   a.n);
}

SolveResult solve_cg(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg) {
    const auto start = Clock::now();
    const auto n = static_cast<std::size_t>(a.n);
    SolveResult out;
    out.x.assign(n, 0.0);

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        out.report.wall_seconds = seconds_since(start);
        return out;
    }

    std::vector<double> inv_diag(n, 1.0);
    if (cfg.preconditioner == SolverConfig::Preconditioner::Diagonal) {
        const std::vector<double> d = a.diagonal();
        for (std::size_t i = 0; i < n; ++i) {
            if (!(d[i] > 0.0)) {
                throw IndefiniteMatrix(fmt::format("non-positive diagonal entry {} at row {}", d[i], i));
            }
            inv_diag[i] = 1.0 / d[i];
        }
    }

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n), p(n), ap(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = inv_diag[i] * r[i];
    }
    p = z;
    double rz = dot(r, z);
    std::vector<double> history;
    const int limit = cfg.iteration_limit(a.n);

    for (int it = 1; it <= limit; ++it) {
        spmv(a, p, ap, cfg.execution);
        const double curvature = dot(p, ap);
        if (!(curvature > 0.0)) {
            throw IndefiniteMatrix(fmt::format("non-positive curvature p^T A p = {:.3e} at iteration {}", curvature, it));
        }
        const double alpha = rz / curvature;
        for (std::size_t i = 0; i < n; ++i) {
            out.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rel = norm2(r) / bnorm;
        history.push_back(rel);
        out.report.iterations = it;
        if (rel <= cfg.rel_tolerance) {
            // The recursive residual can drift; accept only if the true residual agrees.
            out.report.relative_residual = true_relative_residual(a, b, out.x, cfg.execution);
            if (out.report.relative_residual <= cfg.rel_tolerance) {
                out.report.wall_seconds = seconds_since(start);
                return out;
            }
            spmv(a, out.x, ap, cfg.execution);
            for (std::size_t i = 0; i < n; ++i) {
                r[i] = b[i] - ap[i];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = inv_diag[i] * r[i];
        }
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = z[i] + beta * p[i];
        }
    }
    throw NotConverged(fmt::format("CG reached {} iterations with relative residual {:.3e}", limit,
                                   history.empty() ? 1.0 : history.back()),
                       std::move(history));
}

SolveResult solve_dense(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg) {
    if (a.n > kMaxDenseDimension) {
        throw TooLarge(fmt::format("dense path limited to dimension {}, got {}", kMaxDenseDimension, a.n));
    }
    const auto start = Clock::now();
    const Eigen::MatrixXd m = dense_symmetric(a);
    SolveResult out;
    out.report.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly)
                                    .eigenvalues()
                                    .minCoeff();
    const Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw IndefiniteMatrix(
            fmt::format("Cholesky factorisation failed; smallest eigenvalue {:.3e}", *out.report.min_eigenvalue));
    }
    const Eigen::VectorXd x = llt.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), a.n));
    out.x.assign(x.data(), x.data() + x.size());
    out.report.iterations = 1;
    out.report.relative_residual = true_relative_residual(a, b, out.x, cfg.execution);
    out.report.wall_seconds = seconds_since(start);
    if (!(out.report.relative_residual <= cfg.rel_tolerance)) {
        throw NotConverged(fmt::format("dense solve residual {:.3e} above tolerance", out.report.relative_residual),
                           {out.report.relative_residual});
    }
    return out;
}

} // namespace

void SolverConfig::validate() const {
    if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0)) {
        throw InvalidParameter("relative tolerance must lie in (0, 1)");
    }
    if (max_iterations < 0) {
        throw InvalidParameter("max_iterations must be positive (0 selects the default)");
    }
}

int SolverConfig::iteration_limit(int n) const {
    return max_iterations > 0 ? max_iterations
                              : static_cast<int>(20.0 * std::sqrt(static_cast<double>(n))) + 200;
}

SolveResult solve(const CsrMatrix& a, std::span<const double> b, const SolverConfig& config) {
    config.validate();
    if (a.n < 1 || b.size() != static_cast<std::size_t>(a.n)) {
        throw InvalidParameter("system dimension mismatch");
    }
    return config.method == SolverConfig::Method::DenseCholesky ? solve_dense(a, b, config)
                                                                : solve_cg(a, b, config);
}

SolveResult solve(const SparseSystem& system, const SolverConfig& config) {
    return solve(system.matrix, system.rhs, config);
}

double min_eigenvalue_dense(const CsrMatrix& a) {
    if (a.n > kMaxDenseDimension) {
        throw TooLarge(fmt::format("dense eigensolve limited to dimension {}, got {}", kMaxDenseDimension, a.n));
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense_symmetric(a), Eigen::EigenvaluesOnly)
        .eigenvalues()
        .minCoeff();
}

} // namespace robinfem
