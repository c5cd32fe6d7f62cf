#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "dcu/mesh.hpp"
#include "dcu/types.hpp"

namespace dcu {

enum class MetricClass { strict, generalized, invalid };

/**
 * Edge lengths on a triangulation, classified per triangle by the triangle
 * inequalities: strict (all strict), generalized (non-strict with at least
 * one tight triangle) or invalid.
 */
struct PLMetric {
    std::vector<double> length;           // per edge, Triangulation edge order
    std::vector<MetricClass> tri_class;   // per triangle
    MetricClass classification = MetricClass::invalid;

    double at(const Triangulation& t, int u, int v) const { return length[t.edge_index(u, v)]; }
};

using ConformalFactor = std::vector<double>;  // w per vertex
using CurvatureVector = std::vector<double>;  // K per vertex, radians

struct Conductance {
    std::vector<double> eta;  // per edge; cotangent weights
};

// relative tolerance used to separate strict / tight / violated triangle
// inequalities (degenerate triangles sit exactly on the boundary and float
// noise must not flip validity)
constexpr double kTriangleIneqTol = 1e-9;

PLMetric make_metric(const Triangulation& t, std::vector<double> lengths);
PLMetric uniform_metric(const Triangulation& t, double l);

// angle at the vertex opposite l_opp; degenerate triangles give 0 or pi
double corner_angle(double l_opp, double l_b, double l_c);
// angles[k] sits at the corner opposite lengths[k]
std::array<double, 3> triangle_angles(double l0, double l1, double l2);

// lengths of triangle f in metric m, indexed opposite each corner
std::array<double, 3> triangle_lengths(const Triangulation& t, const PLMetric& m, int f);

// per-triangle corner angles, flat array of size 3*T: angle at corner k of
// triangle f lives at 3*f+k
std::vector<double> all_corner_angles(const Triangulation& t, const PLMetric& m);

PLMetric vertex_scale(const Triangulation& t, const PLMetric& m, const ConformalFactor& w);

// interior vertices: 2*pi minus angle sum; boundary vertices: pi minus sum
CurvatureVector curvature(const Triangulation& t, const PLMetric& m);

struct DelaunayReport {
    bool delaunay = true;                 // every interior edge passes
    std::vector<int> violating_edges;
    bool boundary_strict = true;          // every boundary-facing angle <= pi/2
    std::vector<int> boundary_violations; // boundary edges facing an angle > pi/2
};
DelaunayReport is_delaunay(const Triangulation& t, const PLMetric& m, double tol = 1e-9);

// interior edges: cot of both opposite angles summed; boundary edges: one cot
Conductance conductance(const Triangulation& t, const PLMetric& m);

// J[i][j] = da_i/dw_j at w=0 for a strict triangle (l1,l2,l3)
Eigen::Matrix3d angle_jacobian(double l1, double l2, double l3);

struct SpiralSpec {
    double b1 = 1, b2 = 1, b3 = 1;  // lengths of u1, u2, u2-u1
    double lambda = 1, mu = 1;
    Vec2 u1{1, 0}, u2{0.5, 0.8660254037844386};
};

// unique positive root of b2*b3*x^2 + (b3^2-b1^2-b2^2)*x - b2*b3 = 0, and
// mu = (lambda*b2 + b3)/b1
SpiralSpec spiral_factors(double b1, double b2, double b3);

struct SpiralPatch {
    Triangulation tri;
    PLMetric base;        // lattice lengths
    PLMetric scaled;      // w * base; generalized, flat at interior vertices
    ConformalFactor w;    // w(n u1 + m u2) = n ln(lambda) + m ln(mu)
    SpiralSpec spec;
    std::vector<Vec2> base_positions;
    std::vector<std::pair<int, int>> lattice_coords;  // (n, m) per vertex
};

// hexagonal lattice patch { n u1 + m u2 : |n|,|m| <= extent } with the linear
// conformal factor from spiral_factors; requires a geometric basis (the
// lattice triangle is nonobtuse)
SpiralPatch build_spiral_patch(const Vec2& u1, const Vec2& u2, int extent);

}  // namespace dcu
