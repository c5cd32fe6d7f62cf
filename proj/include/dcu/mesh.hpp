#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dcu/types.hpp"

namespace dcu {

/**
 * Combinatorial oriented triangle mesh of a disk or closed surface.
 *
 * Derived structure (edges, adjacency, boundary cycle) is computed once by
 * build_triangulation and immutable afterwards; instances are safe to share
 * read-only across threads.
 */
struct Triangulation {
    int vertex_count = 0;
    std::vector<std::array<int, 3>> triangles;  // oriented vertex triples

    struct Edge {
        int a = -1, b = -1;    // endpoints, a < b
        int tri[2] = {-1, -1}; // incident triangles (tri[1] == -1 on the boundary)
        int n_tri = 0;
    };
    std::vector<Edge> edges;
    std::vector<std::array<int, 3>> tri_edges;  // edge index opposite each corner
    std::vector<std::vector<int>> vertex_triangles;
    std::vector<std::vector<int>> neighbors;  // sorted vertex adjacency
    std::vector<int> boundary_cycle;          // empty for closed surfaces
    std::vector<char> on_boundary;            // per vertex

    int n_vertices() const { return vertex_count; }
    int n_edges() const { return static_cast<int>(edges.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
    int euler_characteristic() const { return n_vertices() - n_edges() + n_triangles(); }

    bool is_boundary_edge(int e) const { return edges[e].n_tri == 1; }
    // -1 when u,v are not adjacent
    int edge_index(int u, int v) const;

    const std::vector<std::vector<int>>& all_boundary_cycles() const { return cycles_; }
    int extra_cycles_count() const { return std::max(0, (int)cycles_.size() - 1); }

private:
    friend Triangulation build_triangulation(const std::vector<std::array<int, 3>>&);
    std::unordered_map<std::int64_t, int> edge_lookup_;
    std::vector<std::vector<int>> cycles_;
};

/**
 * Builds the derived structure and validates that the triangle soup is an
 * oriented connected manifold surface (with or without boundary).
 *
 * Throws Error with code non_manifold, non_orientable or disconnected_surface.
 */
Triangulation build_triangulation(const std::vector<std::array<int, 3>>& triangles);

// Disk-mode validation: Euler characteristic 1 and a single boundary cycle.
// Throws multiple_boundary_cycles / non_manifold accordingly.
void require_disk(const Triangulation& t);

// { i : d_c(i, v) <= r } by breadth-first search on the 1-skeleton; sorted.
std::vector<int> combinatorial_ball(const Triangulation& t, int v, int r);

/**
 * Identification of a complex as the n-th standard subdivision of a parent
 * ("macro") complex.  grid[t] lists fine vertex ids on the barycentric
 * lattice of macro triangle t; see grid_index for the layout.  Fine ids of
 * macro vertices coincide with the macro ids.
 */
struct SubdivisionMap {
    int level = 0;
    int macro_vertex_count = 0;
    std::vector<std::array<int, 3>> macro_triangles;
    std::vector<std::vector<int>> grid;

    // Lattice point with coordinates (level-u-v, u, v) at macro corners (0,1,2).
    static int grid_index(int level, int u, int v) {
        // rows v = 0..level, row v holds level-v+1 entries
        return v * (level + 1) - v * (v - 1) / 2 + u;
    }
    int vertex_at(int tri, int u, int v) const { return grid[tri][grid_index(level, u, v)]; }
};

struct EquilateralComplex {
    Triangulation tri;
    double edge_length = 1.0;
    std::optional<std::vector<Vec2>> positions;  // per vertex, when embedded
    std::optional<SubdivisionMap> macro;
};

struct MarkedDisk {
    EquilateralComplex complex;
    std::array<int, 3> marks = {-1, -1, -1};  // boundary vertices in cycle order
};

// Validates marks: distinct boundary vertices, listed in boundary-cycle order.
void validate_marks(const Triangulation& t, const std::array<int, 3>& marks);

/**
 * Replaces each triangle by its n-th standard subdivision (n^2 triangles of
 * side edge_length/n).  Vertex identification along shared macro edges is
 * exact (integer keys).  Planar positions, when present, are interpolated to
 * the barycentric lattice points.
 */
EquilateralComplex standard_subdivision(const EquilateralComplex& c, int n);

struct HexApproxResult {
    MarkedDisk disk;
    double boundary_hausdorff = 0.0;   // two-sided estimate against the polygon
    int carved_triangles = 0;          // removed to expose 60-degree mark corners
    int dropped_triangles = 0;         // removed by component/hole cleanup
};

/**
 * Largest simply connected union of triangles of the hexagonal lattice
 * Z + e^{i pi/3} Z (scaled by delta, anchored at the bounding-box lower-left
 * corner of the polygon) contained in a simple polygon.  A triangle counts as
 * inside iff its three vertices and centroid are strictly inside.  Marked
 * vertices are boundary vertices with exactly one incident triangle nearest
 * each input mark (within 6*delta); if none exists, the boundary triangle
 * nearest the mark is carved to create one.
 */
HexApproxResult hex_approximate(const std::vector<Vec2>& polygon,
                                const std::array<Vec2, 3>& marks, double delta);

// Lattice extraction stage of hex_approximate, without mark selection.
EquilateralComplex hex_extract(const std::vector<Vec2>& polygon, double delta,
                               int* dropped = nullptr);

// Strict point-in-polygon test (boundary points count as outside).
bool point_strictly_inside(const std::vector<Vec2>& polygon, const Vec2& p);
double distance_to_polygon(const std::vector<Vec2>& polygon, const Vec2& p);

}  // namespace dcu
