#include "dcu/conformal.hpp"

#include <algorithm>
#include <cmath>

namespace dcu {

namespace {

MetricClass classify_triple(double a, double b, double c) {
    const double scale = std::max({a, b, c});
    const double tol = kTriangleIneqTol * scale;
    const double s0 = b + c - a;
    const double s1 = a + c - b;
    const double s2 = a + b - c;
    const double m = std::min({s0, s1, s2});
    if (m > tol) return MetricClass::strict;
    if (m >= -tol) return MetricClass::generalized;
    return MetricClass::invalid;
}

void classify(const Triangulation& t, PLMetric& m) {
    const int T = t.n_triangles();
    m.tri_class.assign(T, MetricClass::strict);
#pragma omp parallel for schedule(static)
    for (int f = 0; f < T; ++f) {
        const auto L = triangle_lengths(t, m, f);
        m.tri_class[f] = classify_triple(L[0], L[1], L[2]);
    }
    bool any_degen = false, any_invalid = false;
    for (auto c : m.tri_class) {
        any_degen |= c == MetricClass::generalized;
        any_invalid |= c == MetricClass::invalid;
    }
    m.classification = any_invalid ? MetricClass::invalid
                     : any_degen   ? MetricClass::generalized
                                   : MetricClass::strict;
}

}  // namespace

PLMetric make_metric(const Triangulation& t, std::vector<double> lengths) {
    if ((int)lengths.size() != t.n_edges())
        throw Error(errc::bad_input, "length vector size does not match edge count");
    for (double l : lengths)
        if (!(l > 0) || !std::isfinite(l))
            throw Error(errc::bad_input, "edge lengths must be positive and finite");
    PLMetric m;
    m.length = std::move(lengths);
    classify(t, m);
    return m;
}

PLMetric uniform_metric(const Triangulation& t, double l) {
    return make_metric(t, std::vector<double>(t.n_edges(), l));
}

std::array<double, 3> triangle_lengths(const Triangulation& t, const PLMetric& m, int f) {
    return {m.length[t.tri_edges[f][0]], m.length[t.tri_edges[f][1]],
            m.length[t.tri_edges[f][2]]};
}

double corner_angle(double l_opp, double l_b, double l_c) {
    if (classify_triple(l_opp, l_b, l_c) == MetricClass::invalid)
        throw Error(errc::invalid_triangle, "triangle inequality violated beyond tolerance");
    double arg = (l_b * l_b + l_c * l_c - l_opp * l_opp) / (2.0 * l_b * l_c);
    arg = std::clamp(arg, -1.0, 1.0);
    return std::acos(arg);
}

std::array<double, 3> triangle_angles(double l0, double l1, double l2) {
    return {corner_angle(l0, l1, l2), corner_angle(l1, l2, l0), corner_angle(l2, l0, l1)};
}

std::vector<double> all_corner_angles(const Triangulation& t, const PLMetric& m) {
    const int T = t.n_triangles();
    std::vector<double> ang(3 * T);
#pragma omp parallel for schedule(static)
    for (int f = 0; f < T; ++f) {
        const auto L = triangle_lengths(t, m, f);
        const auto a = triangle_angles(L[0], L[1], L[2]);
        ang[3 * f + 0] = a[0];
        ang[3 * f + 1] = a[1];
        ang[3 * f + 2] = a[2];
    }
    return ang;
}

PLMetric vertex_scale(const Triangulation& t, const PLMetric& m, const ConformalFactor& w) {
    if ((int)w.size() != t.n_vertices())
        throw Error(errc::bad_input, "conformal factor size does not match vertex count");
    PLMetric out;
    out.length.resize(m.length.size());
    const int E = t.n_edges();
#pragma omp parallel for schedule(static)
    for (int e = 0; e < E; ++e)
        out.length[e] = std::exp(w[t.edges[e].a] + w[t.edges[e].b]) * m.length[e];
    classify(t, out);
    return out;
}

CurvatureVector curvature(const Triangulation& t, const PLMetric& m) {
    if (m.classification == MetricClass::invalid)
        throw Error(errc::invalid_metric, "curvature of an invalid metric");
    const auto ang = all_corner_angles(t, m);
    CurvatureVector K(t.n_vertices());
    const int V = t.n_vertices();
#pragma omp parallel for schedule(static)
    for (int v = 0; v < V; ++v) {
        double sum = 0.0;
        for (int f : t.vertex_triangles[v]) {
            const auto& tr = t.triangles[f];
            for (int k = 0; k < 3; ++k)
                if (tr[k] == v) sum += ang[3 * f + k];
        }
        K[v] = (t.on_boundary[v] ? kPi : 2.0 * kPi) - sum;
    }
    return K;
}

DelaunayReport is_delaunay(const Triangulation& t, const PLMetric& m, double tol) {
    if (m.classification == MetricClass::invalid)
        throw Error(errc::invalid_metric, "Delaunay check on an invalid metric");
    const auto ang = all_corner_angles(t, m);
    DelaunayReport rep;
    auto opp_angle = [&](int e, int which) {
        const int f = t.edges[e].tri[which];
        for (int k = 0; k < 3; ++k)
            if (t.tri_edges[f][k] == e) return ang[3 * f + k];
        return 0.0;  // unreachable
    };
    for (int e = 0; e < t.n_edges(); ++e) {
        if (t.edges[e].n_tri == 2) {
            if (opp_angle(e, 0) + opp_angle(e, 1) > kPi + tol) {
                rep.delaunay = false;
                rep.violating_edges.push_back(e);
            }
        } else {
            if (opp_angle(e, 0) > kPi / 2 + tol) {
                rep.boundary_strict = false;
                rep.boundary_violations.push_back(e);
            }
        }
    }
    return rep;
}

Conductance conductance(const Triangulation& t, const PLMetric& m) {
    if (m.classification == MetricClass::invalid)
        throw Error(errc::invalid_metric, "conductance of an invalid metric");
    const auto ang = all_corner_angles(t, m);
    Conductance c;
    c.eta.resize(t.n_edges());
    const int E = t.n_edges();
    std::vector<char> degen(E, 0);
#pragma omp parallel for schedule(static)
    for (int e = 0; e < E; ++e) {
        double eta = 0.0;
        for (int s = 0; s < t.edges[e].n_tri; ++s) {
            const int f = t.edges[e].tri[s];
            for (int k = 0; k < 3; ++k) {
                if (t.tri_edges[f][k] != e) continue;
                const double a = ang[3 * f + k];
                const double sa = std::sin(a);
                if (sa < 1e-12) {
                    degen[e] = 1;
                } else {
                    eta += std::cos(a) / sa;
                }
            }
        }
        c.eta[e] = eta;
    }
    for (int e = 0; e < E; ++e)
        if (degen[e])
            throw Error(errc::degenerate_angle,
                        "angle facing edge " + std::to_string(e) + " is 0 or pi");
    return c;
}

Eigen::Matrix3d angle_jacobian(double l1, double l2, double l3) {
    if (classify_triple(l1, l2, l3) != MetricClass::strict)
        throw Error(errc::degenerate_triangle, "angle Jacobian needs a strict triangle");
    const auto a = triangle_angles(l1, l2, l3);
    Eigen::Matrix3d J;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        J(i, i) = -std::sin(a[i]) / (std::sin(a[j]) * std::sin(a[k]));
        J(i, j) = std::cos(a[k]) / std::sin(a[k]);
        J(i, k) = std::cos(a[j]) / std::sin(a[j]);
    }
    return J;
}

SpiralSpec spiral_factors(double b1, double b2, double b3) {
    if (!(b1 > 0 && b2 > 0 && b3 > 0))
        throw Error(errc::bad_input, "basis lengths must be positive");
    if (classify_triple(b1, b2, b3) != MetricClass::strict)
        throw Error(errc::bad_input, "basis lengths must form a strict triangle");
    // b2*b3 x^2 + (b3^2 - b1^2 - b2^2) x - b2*b3 = 0; the roots multiply to -1,
    // so the stable-root formula avoids cancellation when b3^2 ~ b1^2 + b2^2
    const double A = b2 * b3;
    const double B = b3 * b3 - b1 * b1 - b2 * b2;
    const double C = -b2 * b3;
    const double disc = std::sqrt(B * B - 4.0 * A * C);
    const double q = -0.5 * (B + (B >= 0 ? disc : -disc));
    const double r1 = q / A;
    const double r2 = C / q;
    SpiralSpec s;
    s.b1 = b1;
    s.b2 = b2;
    s.b3 = b3;
    s.lambda = r1 > 0 ? r1 : r2;
    s.mu = (s.lambda * b2 + b3) / b1;
    return s;
}

SpiralPatch build_spiral_patch(const Vec2& u1, const Vec2& u2, int extent) {
    if (extent < 1) throw Error(errc::bad_input, "extent must be >= 1");
    const double b1 = norm(u1), b2 = norm(u2), b3 = norm(u2 - u1);
    if (std::abs(cross(u1, u2)) < 1e-12 * b1 * b2)
        throw Error(errc::not_geometric_basis, "basis vectors are collinear");
    // geometric basis: the lattice triangulation with edges +-u1, +-u2,
    // +-(u1-u2) is Delaunay, i.e. the basis triangle is nonobtuse
    {
        const auto a = triangle_angles(b1, b2, b3);
        for (double ang : a)
            if (ang > kPi / 2 + 1e-12)
                throw Error(errc::not_geometric_basis, "lattice triangle is obtuse");
    }

    SpiralPatch p;
    p.spec = spiral_factors(b1, b2, b3);
    p.spec.u1 = u1;
    p.spec.u2 = u2;

    const int W = 2 * extent + 1;
    auto id = [&](int n, int m) { return (m + extent) * W + (n + extent); };
    std::vector<std::array<int, 3>> tris;
    for (int m = -extent; m < extent; ++m)
        for (int n = -extent; n < extent; ++n) {
            tris.push_back({id(n, m), id(n + 1, m), id(n, m + 1)});
            tris.push_back({id(n + 1, m), id(n + 1, m + 1), id(n, m + 1)});
        }
    p.tri = build_triangulation(tris);

    p.base_positions.resize(W * W);
    p.lattice_coords.resize(W * W);
    p.w.resize(W * W);
    const double ll = std::log(p.spec.lambda), lm = std::log(p.spec.mu);
    for (int m = -extent; m <= extent; ++m)
        for (int n = -extent; n <= extent; ++n) {
            p.base_positions[id(n, m)] = u1 * (double)n + u2 * (double)m;
            p.lattice_coords[id(n, m)] = {n, m};
            p.w[id(n, m)] = n * ll + m * lm;
        }

    std::vector<double> lengths(p.tri.n_edges());
    for (int e = 0; e < p.tri.n_edges(); ++e)
        lengths[e] = dist(p.base_positions[p.tri.edges[e].a], p.base_positions[p.tri.edges[e].b]);
    p.base = make_metric(p.tri, std::move(lengths));
    p.scaled = vertex_scale(p.tri, p.base, p.w);
    return p;
}

}  // namespace dcu
