#include "robinfem/mesh.hpp"

#include "robinfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

namespace robinfem {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * cross(b - a, c - a);
}

void push_ccw(std::vector<Triangle>& tris, const std::vector<Vec2>& v, int a, int b, int c) {
    if (signed_area(v[a], v[b], v[c]) < 0.0) {
        std::swap(b, c);
    }
    tris.push_back({a, b, c});
}

} // namespace

const Edge& Mesh::edge(int id) const {
    const auto n_int = static_cast<int>(interior_edges.size());
    return id < n_int ? interior_edges[id] : boundary_edges[id - n_int];
}

std::array<Vec2, 3> Mesh::corners(int k) const {
    const Triangle& t = triangles[k];
    return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
}

double Mesh::area(int k) const {
    const auto c = corners(k);
    return signed_area(c[0], c[1], c[2]);
}

Vec2 Mesh::centroid(int k) const {
    const auto c = corners(k);
    return (1.0 / 3.0) * (c[0] + c[1] + c[2]);
}

EdgeTopology build_edge_topology(std::span<const Vec2> vertices, std::span<const Triangle> triangles) {
    struct Entry {
        int lo, hi, tri, local;
    };
    std::vector<Entry> entries;
    entries.reserve(triangles.size() * 3);
    for (std::size_t k = 0; k < triangles.size(); ++k) {
        for (int l = 0; l < 3; ++l) {
            const int a = triangles[k][l];
            const int b = triangles[k][(l + 1) % 3];
            entries.push_back({std::min(a, b), std::max(a, b), static_cast<int>(k), l});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        return std::tie(x.lo, x.hi, x.tri, x.local) < std::tie(y.lo, y.hi, y.tri, y.local);
    });

    EdgeTopology topo;
    topo.triangle_edges.assign(triangles.size(), {-1, -1, -1});

    // Boundary ids are only known once all interior edges are counted.
    std::vector<std::pair<int, int>> pending_boundary; // (tri, local)
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].lo == entries[i].lo && entries[j].hi == entries[i].hi) {
            ++j;
        }
        const std::size_t count = j - i;
        if (count > 2) {
            throw NonManifoldMesh("edge (" + std::to_string(entries[i].lo) + ", " +
                                  std::to_string(entries[i].hi) + ") is shared by " +
                                  std::to_string(count) + " triangles");
        }
        const Entry& first = entries[i];
        const Triangle& t = triangles[first.tri];
        const Vec2 p = vertices[t[first.local]];
        const Vec2 q = vertices[t[(first.local + 1) % 3]];
        const double h = norm(q - p);

        Edge e;
        e.vertices = {first.lo, first.hi};
        e.elements = {first.tri, -1};
        e.local = {first.local, -1};
        e.h = h;
        // Counterclockwise element: the outward normal is the edge direction turned clockwise.
        e.normal = (1.0 / h) * Vec2{q.y - p.y, p.x - q.x};

        if (count == 2) {
            const Entry& second = entries[i + 1];
            e.elements[1] = second.tri;
            e.local[1] = second.local;
            const int id = static_cast<int>(topo.interior.size());
            topo.triangle_edges[first.tri][first.local] = id;
            topo.triangle_edges[second.tri][second.local] = id;
            topo.interior.push_back(e);
        } else {
            pending_boundary.emplace_back(first.tri, first.local);
            topo.boundary.push_back(e);
        }
        i = j;
    }
    const auto n_int = static_cast<int>(topo.interior.size());
    for (std::size_t b = 0; b < pending_boundary.size(); ++b) {
        const auto [tri, local] = pending_boundary[b];
        topo.triangle_edges[tri][local] = n_int + static_cast<int>(b);
    }
    return topo;
}

Mesh make_mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles, int level) {
    const auto nv = static_cast<int>(vertices.size());
    for (std::size_t k = 0; k < triangles.size(); ++k) {
        for (int idx : triangles[k]) {
            if (idx < 0 || idx >= nv) {
                throw InvalidParameter("triangle " + std::to_string(k) + " references vertex " +
                                       std::to_string(idx) + " out of range");
            }
        }
        const Triangle& t = triangles[k];
        if (!(signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]) > 0.0)) {
            throw InvalidParameter("triangle " + std::to_string(k) + " is not counterclockwise");
        }
    }

    Mesh mesh;
    mesh.level = level;
    EdgeTopology topo = build_edge_topology(vertices, triangles);
    mesh.vertices = std::move(vertices);
    mesh.triangles = std::move(triangles);
    mesh.interior_edges = std::move(topo.interior);
    mesh.boundary_edges = std::move(topo.boundary);
    mesh.triangle_edges = std::move(topo.triangle_edges);

    for (const Edge& e : mesh.interior_edges) {
        mesh.h_max = std::max(mesh.h_max, e.h);
    }
    for (const Edge& e : mesh.boundary_edges) {
        mesh.h_max = std::max(mesh.h_max, e.h);
    }
    return mesh;
}

Mesh generate_disk_mesh(int rings, int level) {
    if (rings < 2) {
        throw InvalidParameter("disk mesh needs at least 2 rings");
    }
    const int n = rings;
    const auto ring_offset = [](int j) { return j == 0 ? 0 : 1 + 3 * j * (j - 1); };

    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>(ring_offset(n + 1)));
    vertices.push_back({0.0, 0.0});
    for (int j = 1; j <= n; ++j) {
        const double r = (j == n) ? 1.0 : static_cast<double>(j) / n;
        const int count = 6 * j;
        for (int m = 0; m < count; ++m) {
            const double theta = 2.0 * std::numbers::pi * m / count;
            vertices.push_back({r * std::cos(theta), r * std::sin(theta)});
        }
    }

    std::vector<Triangle> triangles;
    triangles.reserve(static_cast<std::size_t>(6 * n * n));
    for (int m = 0; m < 6; ++m) {
        push_ccw(triangles, vertices, 0, 1 + m, 1 + (m + 1) % 6);
    }
    for (int j = 2; j <= n; ++j) {
        const int n_in = 6 * (j - 1);
        const int n_out = 6 * j;
        const int off_in = ring_offset(j - 1);
        const int off_out = ring_offset(j);
        const auto inner = [&](int s, int a) { return off_in + (s * (j - 1) + a) % n_in; };
        const auto outer = [&](int s, int b) { return off_out + (s * j + b) % n_out; };
        // Each of the six sectors zips j-1 inner segments against j outer segments,
        // always advancing along the ring whose next segment midpoint comes first.
        for (int s = 0; s < 6; ++s) {
            int a = 0;
            int b = 0;
            while (a < j - 1 || b < j) {
                const bool advance_outer =
                    a == j - 1 || (b < j && (2 * b + 1) * (j - 1) <= (2 * a + 1) * j);
                if (advance_outer) {
                    push_ccw(triangles, vertices, inner(s, a), outer(s, b), outer(s, b + 1));
                    ++b;
                } else {
                    push_ccw(triangles, vertices, inner(s, a), outer(s, b), inner(s, a + 1));
                    ++a;
                }
            }
        }
    }
    return make_mesh(std::move(vertices), std::move(triangles), level);
}

Mesh generate_square_mesh(int n, int level) {
    if (n < 1) {
        throw InvalidParameter("square mesh needs at least 1 cell per side");
    }
    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        }
    }
    const auto id = [n](int i, int j) { return i + (n + 1) * j; };
    std::vector<Triangle> triangles;
    triangles.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return make_mesh(std::move(vertices), std::move(triangles), level);
}

int refinement_size(int level) {
    return 4 << level;
}

Mesh generate_mesh(const Domain& domain, int size, int level) {
    return domain.kind() == Domain::Kind::UnitDisk ? generate_disk_mesh(size, level)
                                                   : generate_square_mesh(size, level);
}

std::vector<Mesh> refinement_sequence(const Domain& domain, int levels) {
    if (levels < 2) {
        throw InvalidParameter("a refinement sequence needs at least 2 levels");
    }
    std::vector<Mesh> meshes;
    meshes.reserve(static_cast<std::size_t>(levels));
    for (int l = 0; l < levels; ++l) {
        meshes.push_back(generate_mesh(domain, refinement_size(l), l));
    }
    return meshes;
}

double total_area(const Mesh& mesh) {
    double sum = 0.0;
    for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
        sum += mesh.area(static_cast<int>(k));
    }
    return sum;
}

double min_angle_degrees(const Mesh& mesh) {
    double min_angle = 180.0;
    for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
        const auto c = mesh.corners(static_cast<int>(k));
        for (int i = 0; i < 3; ++i) {
            const Vec2 u = c[(i + 1) % 3] - c[i];
            const Vec2 w = c[(i + 2) % 3] - c[i];
            const double angle = std::atan2(std::abs(cross(u, w)), dot(u, w));
            min_angle = std::min(min_angle, angle * 180.0 / std::numbers::pi);
        }
    }
    return min_angle;
}

} // namespace robinfem
