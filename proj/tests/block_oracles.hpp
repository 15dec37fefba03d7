#pragma once

// Local element and edge blocks recomputed from their defining integrals with
// Romberg integration and physical-coordinate basis functions.

#include "support.hpp"

#include "robinfem/mesh.hpp"

#include <functional>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(int r, int c) { return Dense(static_cast<std::size_t>(r), std::vector<double>(static_cast<std::size_t>(c), 0.0)); }

inline double dotv(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Unit normal of the segment (p, q) pointing away from `inside`.
inline Vec2 outward(const Vec2& p, const Vec2& q, const Vec2& inside) {
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    Vec2 n{(q.y - p.y) / len, -(q.x - p.x) / len};
    const Vec2 mid{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
    if (dotv(n, {mid.x - inside.x, mid.y - inside.y}) < 0.0) {
        n = {-n.x, -n.y};
    }
    return n;
}

inline Vec2 centroid(const robinfem::Mesh& m, int k) {
    const auto& t = m.triangles[static_cast<std::size_t>(k)];
    const Vec2 a = m.vertices[t[0]], b = m.vertices[t[1]], c = m.vertices[t[2]];
    return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

inline Dense stiffness(const robinfem::Mesh& m, int k, int degree) {
    const PhysicalBasis pb(m, k, degree);
    Dense out = zeros(pb.size(), pb.size());
    for (int i = 0; i < pb.size(); ++i) {
        for (int j = 0; j < pb.size(); ++j) {
            out[i][j] = triangle_integral([&](const Vec2& x) { return dotv(pb.grad(i, x), pb.grad(j, x)); }, pb.a,
                                          pb.b, pb.c);
        }
    }
    return out;
}

/// -a(<dw/dn, v> + <w, dv/dn>) + b <w, v> - c <dw/dn, dv/dn>, weights from their definitions.
inline Dense nitsche_boundary(const robinfem::Mesh& m, const robinfem::Edge& e, int degree, double eps,
                              double gamma) {
    const int k = e.elements[0];
    const PhysicalBasis pb(m, k, degree);
    const Vec2 p = m.vertices[e.vertices[0]], q = m.vertices[e.vertices[1]];
    const double h = std::hypot(q.x - p.x, q.y - p.y);
    const Vec2 n = outward(p, q, centroid(m, k));
    const double a = gamma * h / (eps + gamma * h);
    const double b = 1.0 / (eps + gamma * h);
    const double c = eps * gamma * h / (eps + gamma * h);
    Dense out = zeros(pb.size(), pb.size());
    for (int i = 0; i < pb.size(); ++i) {
        for (int j = 0; j < pb.size(); ++j) {
            out[i][j] = segment_integral(
                [&](const Vec2& x) {
                    const double wi = pb.value(i, x), wj = pb.value(j, x);
                    const double di = dotv(pb.grad(i, x), n), dj = dotv(pb.grad(j, x), n);
                    return -a * (dj * wi + wj * di) + b * wj * wi - c * dj * di;
                },
                p, q);
        }
    }
    return out;
}

/// J_h on one interior edge in vector form; rows/cols: side 0 dofs, then side 1.
inline Dense interior_penalty(const robinfem::Mesh& m, const robinfem::Edge& e, int degree, double gamma) {
    const PhysicalBasis b0(m, e.elements[0], degree);
    const PhysicalBasis b1(m, e.elements[1], degree);
    const Vec2 p = m.vertices[e.vertices[0]], q = m.vertices[e.vertices[1]];
    const double h = std::hypot(q.x - p.x, q.y - p.y);
    const Vec2 n0 = outward(p, q, centroid(m, e.elements[0]));
    const Vec2 n1{-n0.x, -n0.y};
    const int s = b0.size();
    Dense out = zeros(2 * s, 2 * s);
    const auto jump = [&](int i, const Vec2& x) -> Vec2 {
        if (i < s) {
            const double v = b0.value(i, x);
            return {v * n0.x, v * n0.y};
        }
        const double v = b1.value(i - s, x);
        return {v * n1.x, v * n1.y};
    };
    const auto mean_grad = [&](int i, const Vec2& x) -> Vec2 {
        const Vec2 g = i < s ? b0.grad(i, x) : b1.grad(i - s, x);
        return {0.5 * g.x, 0.5 * g.y};
    };
    for (int i = 0; i < 2 * s; ++i) {
        for (int j = 0; j < 2 * s; ++j) {
            out[i][j] = segment_integral(
                [&](const Vec2& x) {
                    return -dotv(mean_grad(j, x), jump(i, x)) - dotv(jump(j, x), mean_grad(i, x)) +
                           dotv(jump(j, x), jump(i, x)) / (gamma * h);
                },
                p, q);
        }
    }
    return out;
}

inline std::vector<double> element_load(const robinfem::Mesh& m, int k, int degree,
                                        const std::function<double(const Vec2&)>& f) {
    const PhysicalBasis pb(m, k, degree);
    std::vector<double> out(static_cast<std::size_t>(pb.size()));
    for (int i = 0; i < pb.size(); ++i) {
        out[static_cast<std::size_t>(i)] =
            triangle_integral([&](const Vec2& x) { return f(x) * pb.value(i, x); }, pb.a, pb.b, pb.c);
    }
    return out;
}

inline std::vector<double> boundary_load(const robinfem::Mesh& m, const robinfem::Edge& e, int degree, double eps,
                                         double gamma, const std::function<double(const Vec2&)>& u0,
                                         const std::function<double(const Vec2&)>& g) {
    const int k = e.elements[0];
    const PhysicalBasis pb(m, k, degree);
    const Vec2 p = m.vertices[e.vertices[0]], q = m.vertices[e.vertices[1]];
    const double h = std::hypot(q.x - p.x, q.y - p.y);
    const Vec2 n = outward(p, q, centroid(m, k));
    const double gh = gamma * h;
    std::vector<double> out(static_cast<std::size_t>(pb.size()));
    for (int i = 0; i < pb.size(); ++i) {
        out[static_cast<std::size_t>(i)] = segment_integral(
            [&](const Vec2& x) {
                const double v = pb.value(i, x);
                const double dv = dotv(pb.grad(i, x), n);
                return u0(x) * v / (eps + gh) - gh / (eps + gh) * u0(x) * dv + eps / (eps + gh) * g(x) * v -
                       eps * gh / (eps + gh) * g(x) * dv;
            },
            p, q);
    }
    return out;
}

} // namespace oracle
