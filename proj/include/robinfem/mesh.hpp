#pragma once

#include "robinfem/geometry.hpp"
#include "robinfem/vec2.hpp"

#include <array>
#include <filesystem>
#include <span>
#include <vector>

namespace robinfem {

using Triangle = std::array<int, 3>;

/// Mesh edge. Local edge l of a triangle joins its vertices l and (l+1)%3.
struct Edge {
    std::array<int, 2> vertices{};       ///< ascending global vertex ids
    std::array<int, 2> elements{-1, -1}; ///< elements[1] < 0 on boundary edges
    std::array<int, 2> local{-1, -1};    ///< local edge index inside each element
    double h = 0.0;                      ///< diam E
    Vec2 normal;                         ///< unit, outward from elements[0]

    bool on_boundary() const { return elements[1] < 0; }
};

struct EdgeTopology {
    std::vector<Edge> interior;
    std::vector<Edge> boundary;
    /// Per triangle and local edge: interior edges use ids [0, I), boundary edges [I, I+B).
    std::vector<std::array<int, 3>> triangle_edges;
};

/// Conforming triangulation with counterclockwise triangles and full edge topology.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<Triangle> triangles;
    std::vector<Edge> interior_edges;
    std::vector<Edge> boundary_edges;
    std::vector<std::array<int, 3>> triangle_edges;
    double h_max = 0.0;
    int level = 0;

    std::size_t num_edges() const { return interior_edges.size() + boundary_edges.size(); }
    const Edge& edge(int id) const;

    std::array<Vec2, 3> corners(int k) const;
    double area(int k) const;
    Vec2 centroid(int k) const;
};

/// Assembles a Mesh from raw arrays: checks orientation, builds topology, computes h_max.
/// Throws InvalidParameter for out-of-range indices or non-positive triangle areas.
Mesh make_mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles, int level = 0);

/// Pairs shared by two triangles become interior edges (elements ordered by ascending
/// triangle index), pairs used once become boundary edges. Edges are sorted by vertex pair.
EdgeTopology build_edge_topology(std::span<const Vec2> vertices, std::span<const Triangle> triangles);

/// Concentric-ring disk mesh: ring j in 1..rings holds 6j vertices at radius j/rings.
Mesh generate_disk_mesh(int rings, int level = 0);

/// Unit-square grid of n x n cells, each cut along its rising diagonal.
Mesh generate_square_mesh(int n, int level = 0);

/// Meshes with rings (disk) or cells per side (square) equal to 4 * 2^l, l = 0..levels-1.
std::vector<Mesh> refinement_sequence(const Domain& domain, int levels);

/// Size parameter used for refinement level l.
int refinement_size(int level);

Mesh generate_mesh(const Domain& domain, int size, int level = 0);

double total_area(const Mesh& mesh);
double min_angle_degrees(const Mesh& mesh);

/// Text format: "meshfmt 1", "vertices V", V lines "x y", "triangles T", T lines "i j k",
/// optional trailing comment lines starting with '#'.
void write_mesh(const Mesh& mesh, const std::filesystem::path& path);
Mesh read_mesh(const std::filesystem::path& path);

} // namespace robinfem
