#pragma once

#include "robinfem/assembly.hpp"
#include "robinfem/sparse.hpp"

#include <optional>
#include <vector>

namespace robinfem {

struct SolverConfig {
    enum class Method { ConjugateGradient, DenseCholesky };
    enum class Preconditioner { None, Diagonal };

    Method method = Method::ConjugateGradient;
    double rel_tolerance = 1e-10;
    /// 0 selects the default 20 sqrt(n) + 200.
    int max_iterations = 0;
    Preconditioner preconditioner = Preconditioner::Diagonal;
    Execution execution = Execution::Parallel;

    void validate() const;
    int iteration_limit(int n) const;
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0; ///< ||b - Ax|| / ||b||, recomputed from the returned x
    double wall_seconds = 0.0;
    std::optional<double> min_eigenvalue; ///< dense path only
};

struct SolveResult {
    std::vector<double> x;
    SolveReport report;
};

/// Throws NotConverged or IndefiniteMatrix (a non-positive curvature p^T A p, a
/// non-positive diagonal under Jacobi, or a failed Cholesky factorisation).
SolveResult solve(const CsrMatrix& a, std::span<const double> b, const SolverConfig& config = {});
SolveResult solve(const SparseSystem& system, const SolverConfig& config = {});

inline constexpr int kMaxDenseDimension = 2000;

/// Smallest eigenvalue of (A + A^T)/2 by dense symmetric eigensolve. Throws TooLarge.
double min_eigenvalue_dense(const CsrMatrix& a);

} // namespace robinfem
