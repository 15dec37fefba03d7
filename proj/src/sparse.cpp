#include "robinfem/sparse.hpp"

#include "robinfem/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace robinfem {

double CsrMatrix::at(int i, int j) const {
    const auto begin = col.begin() + row_ptr[i];
    const auto end = col.begin() + row_ptr[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    return (it != end && *it == j) ? val[static_cast<std::size_t>(it - col.begin())] : 0.0;
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : val) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        d[i] = at(i, i);
    }
    return d;
}

CsrMatrix compress(int n, const Triplets& t, Execution exec) {
    const std::size_t m = t.size();

    // Stable counting sort by row keeps slot order inside each row.
    std::vector<std::int64_t> count(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t s = 0; s < m; ++s) {
        ++count[static_cast<std::size_t>(t.rows[s]) + 1];
    }
    std::partial_sum(count.begin(), count.end(), count.begin());
    std::vector<std::size_t> order(m);
    {
        std::vector<std::int64_t> next(count.begin(), count.end() - 1);
        for (std::size_t s = 0; s < m; ++s) {
            order[static_cast<std::size_t>(next[static_cast<std::size_t>(t.rows[s])]++)] = s;
        }
    }

    // Per row: stable sort by column, then sum runs. Rows are independent.
    std::vector<std::int64_t> unique_per_row(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic, 256) if (exec == Execution::Parallel)
    for (int i = 0; i < n; ++i) {
        auto first = order.begin() + count[i];
        auto last = order.begin() + count[i + 1];
        std::stable_sort(first, last, [&](std::size_t a, std::size_t b) { return t.cols[a] < t.cols[b]; });
        std::int64_t u = 0;
        for (auto it = first; it != last; ++it) {
            if (it == first || t.cols[*it] != t.cols[*(it - 1)]) {
                ++u;
            }
        }
        unique_per_row[i] = u;
    }

    CsrMatrix a;
    a.n = n;
    a.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        a.row_ptr[i + 1] = a.row_ptr[i] + unique_per_row[i];
    }
    a.col.resize(static_cast<std::size_t>(a.row_ptr[n]));
    a.val.resize(static_cast<std::size_t>(a.row_ptr[n]));

#pragma omp parallel for schedule(dynamic, 256) if (exec == Execution::Parallel)
    for (int i = 0; i < n; ++i) {
        std::int64_t out = a.row_ptr[i] - 1;
        for (std::int64_t p = count[i]; p < count[i + 1]; ++p) {
            const std::size_t s = order[static_cast<std::size_t>(p)];
            if (p == count[i] || t.cols[s] != a.col[static_cast<std::size_t>(out)]) {
                ++out;
                a.col[static_cast<std::size_t>(out)] = t.cols[s];
                a.val[static_cast<std::size_t>(out)] = t.values[s];
            } else {
                a.val[static_cast<std::size_t>(out)] += t.values[s];
            }
        }
    }
    return a;
}

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y, Execution exec) {
    if (exec == Execution::Serial) {
        for (int i = 0; i < a.n; ++i) {
            double sum = 0.0;
            for (std::int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
                sum += a.val[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(a.col[static_cast<std::size_t>(p)])];
            }
            y[static_cast<std::size_t>(i)] = sum;
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.n; ++i) {
        double sum = 0.0;
        for (std::int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            sum += a.val[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(a.col[static_cast<std::size_t>(p)])];
        }
        y[static_cast<std::size_t>(i)] = sum;
    }
}

double symmetry_defect(const CsrMatrix& a) {
    const double scale = a.max_abs();
    if (scale == 0.0) {
        return 0.0;
    }
    double worst = 0.0;
    for (int i = 0; i < a.n; ++i) {
        for (std::int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            const int j = a.col[static_cast<std::size_t>(p)];
            worst = std::max(worst, std::abs(a.val[static_cast<std::size_t>(p)] - a.at(j, i)));
        }
    }
    return worst / scale;
}

std::vector<double> to_dense(const CsrMatrix& a, bool symmetrize) {
    const auto n = static_cast<std::size_t>(a.n);
    std::vector<double> d(n * n, 0.0);
    for (int i = 0; i < a.n; ++i) {
        for (std::int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            d[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(a.col[static_cast<std::size_t>(p)])] =
                a.val[static_cast<std::size_t>(p)];
        }
    }
    if (symmetrize) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double s = 0.5 * (d[i * n + j] + d[j * n + i]);
                d[i * n + j] = s;
                d[j * n + i] = s;
            }
        }
    }
    return d;
}

void write_triplets(const CsrMatrix& a, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    fmt::memory_buffer buf;
    for (int i = 0; i < a.n; ++i) {
        for (std::int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            fmt::format_to(std::back_inserter(buf), "{} {} {:.17g}\n", i, a.col[static_cast<std::size_t>(p)],
                           a.val[static_cast<std::size_t>(p)]);
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

} // namespace robinfem
