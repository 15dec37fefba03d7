#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace robinfem {

/// Selects the OpenMP kernels or their serial reference counterparts.
enum class Execution { Serial, Parallel };

/// Coordinate-format contributions. Slot order defines summation order.
struct Triplets {
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    void resize(std::size_t n) {
        rows.resize(n);
        cols.resize(n);
        values.resize(n);
    }
};

/// Compressed sparse row matrix with sorted column indices.
struct CsrMatrix {
    int n = 0;
    std::vector<std::int64_t> row_ptr; ///< n + 1 entries
    std::vector<int> col;
    std::vector<double> val;

    std::size_t nnz() const { return val.size(); }
    /// Stored entry or 0.
    double at(int i, int j) const;
    double max_abs() const;
    std::vector<double> diagonal() const;
};

/// Duplicates are summed in ascending slot order, so the result is bitwise
/// independent of the execution policy and thread count.
CsrMatrix compress(int n, const Triplets& triplets, Execution exec = Execution::Parallel);

/// y = A x.
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
          Execution exec = Execution::Parallel);

/// max |A_ij - A_ji| / max |A|.
double symmetry_defect(const CsrMatrix& a);

/// Dense row-major copy of A (symmetrised if requested).
std::vector<double> to_dense(const CsrMatrix& a, bool symmetrize = false);

/// Writes "i j value" lines, lexicographically sorted, 17 significant digits.
void write_triplets(const CsrMatrix& a, const std::filesystem::path& path);

/// Fixed-order dot product.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

} // namespace robinfem
