#pragma once

// Independent oracles for the unit and acceptance tests. Nothing here calls the
// library's quadrature, basis or map code.

#include "robinfem/mesh.hpp"
#include "robinfem/vec2.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <random>

namespace oracle {

using robinfem::Vec2;

/// Romberg integration on [a, b]; exact for polynomials of degree < 2 * levels + 2.
inline double romberg(const std::function<double(double)>& f, double a, double b, int levels = 8) {
    std::array<std::array<double, 16>, 16> r{};
    double h = b - a;
    r[0][0] = 0.5 * h * (f(a) + f(b));
    for (int i = 1; i <= levels; ++i) {
        h *= 0.5;
        double sum = 0.0;
        const int count = 1 << (i - 1);
        for (int k = 1; k <= count; ++k) {
            sum += f(a + (2 * k - 1) * h);
        }
        r[i][0] = 0.5 * r[i - 1][0] + h * sum;
        double p = 4.0;
        for (int j = 1; j <= i; ++j) {
            r[i][j] = r[i][j - 1] + (r[i][j - 1] - r[i - 1][j - 1]) / (p - 1.0);
            p *= 4.0;
        }
    }
    return r[levels][levels];
}

/// Line integral of f over the segment [p, q].
inline double segment_integral(const std::function<double(const Vec2&)>& f, const Vec2& p, const Vec2& q,
                               int levels = 8) {
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    return len * romberg([&](double t) { return f({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)}); }, 0.0, 1.0,
                         levels);
}

/// Area integral over triangle (a, b, c) via the collapsed square map.
inline double triangle_integral(const std::function<double(const Vec2&)>& f, const Vec2& a, const Vec2& b,
                                const Vec2& c, int levels = 6) {
    const double det = std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
    return det * romberg(
                     [&](double s) {
                         return (1.0 - s) * romberg(
                                                [&](double t) {
                                                    const double u = s;
                                                    const double v = t * (1.0 - s);
                                                    return f({a.x + u * (b.x - a.x) + v * (c.x - a.x),
                                                              a.y + u * (b.y - a.y) + v * (c.y - a.y)});
                                                },
                                                0.0, 1.0, levels);
                     },
                     0.0, 1.0, levels);
}

/// Barycentric coordinates of x in triangle (a, b, c), from signed sub-areas.
inline std::array<double, 3> barycentric(const Vec2& x, const Vec2& a, const Vec2& b, const Vec2& c) {
    const auto area = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return 0.5 * ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x));
    };
    const double t = area(a, b, c);
    return {area(x, b, c) / t, area(a, x, c) / t, area(a, b, x) / t};
}

/// Constant gradients of the barycentric coordinates.
inline std::array<Vec2, 3> barycentric_gradients(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double twice = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return {Vec2{(b.y - c.y) / twice, (c.x - b.x) / twice}, Vec2{(c.y - a.y) / twice, (a.x - c.x) / twice},
            Vec2{(a.y - b.y) / twice, (b.x - a.x) / twice}};
}

/// Physical Lagrange basis function i (degree 1 or 2) and its gradient on triangle k.
struct PhysicalBasis {
    Vec2 a, b, c;
    int degree;

    PhysicalBasis(const robinfem::Mesh& mesh, int k, int deg)
        : a(mesh.vertices[mesh.triangles[k][0]]), b(mesh.vertices[mesh.triangles[k][1]]),
          c(mesh.vertices[mesh.triangles[k][2]]), degree(deg) {}

    int size() const { return degree == 1 ? 3 : 6; }

    double value(int i, const Vec2& x) const {
        const auto l = barycentric(x, a, b, c);
        if (degree == 1) {
            return l[i];
        }
        if (i < 3) {
            return l[i] * (2.0 * l[i] - 1.0);
        }
        const int p = i - 3;
        return 4.0 * l[p] * l[(p + 1) % 3];
    }

    Vec2 grad(int i, const Vec2& x) const {
        const auto l = barycentric(x, a, b, c);
        const auto g = barycentric_gradients(a, b, c);
        if (degree == 1) {
            return g[i];
        }
        if (i < 3) {
            const double s = 4.0 * l[i] - 1.0;
            return {s * g[i].x, s * g[i].y};
        }
        const int p = i - 3;
        const int q = (p + 1) % 3;
        return {4.0 * (l[p] * g[q].x + l[q] * g[p].x), 4.0 * (l[p] * g[q].y + l[q] * g[p].y)};
    }
};

/// Hyper-dual number a + b e1 + c e2 + d e1 e2 with e1^2 = e2^2 = 0.
struct HyperDual {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    HyperDual() = default;
    HyperDual(double v) : a(v) {} // NOLINT
    HyperDual(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    friend HyperDual operator+(const HyperDual& x, const HyperDual& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend HyperDual operator-(const HyperDual& x, const HyperDual& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend HyperDual operator-(const HyperDual& x) { return {-x.a, -x.b, -x.c, -x.d}; }
    friend HyperDual operator*(const HyperDual& x, const HyperDual& y) {
        return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a,
                x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
    }
    friend HyperDual operator+(const HyperDual& x, double y) { return x + HyperDual(y); }
    friend HyperDual operator+(double x, const HyperDual& y) { return HyperDual(x) + y; }
    friend HyperDual operator-(const HyperDual& x, double y) { return x - HyperDual(y); }
    friend HyperDual operator-(double x, const HyperDual& y) { return HyperDual(x) - y; }
    friend HyperDual operator*(const HyperDual& x, double y) { return {x.a * y, x.b * y, x.c * y, x.d * y}; }
    friend HyperDual operator*(double x, const HyperDual& y) { return y * x; }
};

/// f(x) lifted through the chain rule with f', f''.
inline HyperDual lift(const HyperDual& x, double f0, double f1, double f2) {
    return {f0, f1 * x.b, f1 * x.c, f1 * x.d + f2 * x.b * x.c};
}
inline HyperDual sin(const HyperDual& x) { return lift(x, std::sin(x.a), std::cos(x.a), -std::sin(x.a)); }
inline HyperDual cos(const HyperDual& x) { return lift(x, std::cos(x.a), -std::sin(x.a), -std::cos(x.a)); }
inline HyperDual exp(const HyperDual& x) {
    const double e = std::exp(x.a);
    return lift(x, e, e, e);
}
inline HyperDual sqrt(const HyperDual& x) {
    const double s = std::sqrt(x.a);
    return lift(x, s, 0.5 / s, -0.25 / (s * x.a));
}

/// Gradient and Laplacian of u(x, y) by hyper-dual differentiation.
struct Derivatives {
    Vec2 grad;
    double laplacian;
};

template <class F>
Derivatives differentiate(const Vec2& p) {
    const HyperDual xx = F::u(HyperDual(p.x, 1.0, 1.0, 0.0), HyperDual(p.y));
    const HyperDual yy = F::u(HyperDual(p.x), HyperDual(p.y, 1.0, 1.0, 0.0));
    return {{xx.b, yy.b}, xx.d + yy.d};
}

/// Uniform random point in the unit disk.
inline Vec2 random_in_disk(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const Vec2 p{u(rng), u(rng)};
        if (p.x * p.x + p.y * p.y < 1.0) {
            return p;
        }
    }
}

} // namespace oracle
