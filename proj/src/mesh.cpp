#include "dcu/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace dcu {

const char* errc_name(errc c) {
    switch (c) {
        case errc::non_manifold: return "NonManifold";
        case errc::non_orientable: return "NonOrientable";
        case errc::disconnected_surface: return "DisconnectedSurface";
        case errc::multiple_boundary_cycles: return "MultipleBoundaryCycles";
        case errc::empty_intersection: return "EmptyIntersection";
        case errc::no_convex_corner: return "NoConvexCorner";
        case errc::invalid_triangle: return "InvalidTriangle";
        case errc::invalid_metric: return "InvalidMetric";
        case errc::degenerate_angle: return "DegenerateAngle";
        case errc::degenerate_triangle: return "DegenerateTriangle";
        case errc::not_geometric_basis: return "NotGeometricBasis";
        case errc::singular_system: return "SingularSystem";
        case errc::non_convergence: return "NonConvergence";
        case errc::left_admissible_domain: return "LeftAdmissibleDomain";
        case errc::step_underflow: return "StepUnderflow";
        case errc::balls_overlap: return "BallsOverlap";
        case errc::inconsistent_development: return "InconsistentDevelopment";
        case errc::degenerate_seed: return "DegenerateSeed";
        case errc::not_a_triangle_boundary: return "NotATriangleBoundary";
        case errc::degenerate_source_triangle: return "DegenerateSourceTriangle";
        case errc::bad_input: return "BadInput";
    }
    return "UnknownError";
}

namespace {

std::int64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

int Triangulation::edge_index(int u, int v) const {
    auto it = edge_lookup_.find(edge_key(u, v));
    return it == edge_lookup_.end() ? -1 : it->second;
}

Triangulation build_triangulation(const std::vector<std::array<int, 3>>& triangles) {
    Triangulation t;
    t.triangles = triangles;
    if (triangles.empty()) throw Error(errc::bad_input, "empty triangle list");

    int vmax = -1;
    for (const auto& tr : triangles) {
        if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])
            throw Error(errc::bad_input, "triangle with repeated vertex");
        for (int k = 0; k < 3; ++k) {
            if (tr[k] < 0) throw Error(errc::bad_input, "negative vertex index");
            vmax = std::max(vmax, tr[k]);
        }
    }
    t.vertex_count = vmax + 1;

    // duplicate triangles (same vertex set) make degenerate closed pockets
    {
        std::set<std::array<int, 3>> seen;
        for (const auto& tr : triangles) {
            std::array<int, 3> s = tr;
            std::sort(s.begin(), s.end());
            if (!seen.insert(s).second)
                throw Error(errc::non_manifold, "two triangles share all three vertices");
        }
    }

    // edges with incident triangles
    std::unordered_map<std::int64_t, int> lookup;
    lookup.reserve(triangles.size() * 2);
    t.tri_edges.resize(triangles.size());
    for (int f = 0; f < (int)triangles.size(); ++f) {
        const auto& tr = triangles[f];
        for (int k = 0; k < 3; ++k) {
            const int u = tr[(k + 1) % 3], v = tr[(k + 2) % 3];  // edge opposite corner k
            auto key = edge_key(u, v);
            auto it = lookup.find(key);
            int e;
            if (it == lookup.end()) {
                e = (int)t.edges.size();
                lookup.emplace(key, e);
                Triangulation::Edge ed;
                ed.a = std::min(u, v);
                ed.b = std::max(u, v);
                t.edges.push_back(ed);
            } else {
                e = it->second;
            }
            auto& ed = t.edges[e];
            if (ed.n_tri >= 2)
                throw Error(errc::non_manifold, "edge with more than two incident triangles");
            ed.tri[ed.n_tri++] = f;
            t.tri_edges[f][k] = e;
        }
    }
    t.edge_lookup_ = std::move(lookup);

    // orientation: the two incident triangles must traverse a shared edge in
    // opposite directions
    auto directed_in = [&](int f, int u, int v) {
        const auto& tr = t.triangles[f];
        for (int k = 0; k < 3; ++k)
            if (tr[k] == u && tr[(k + 1) % 3] == v) return true;
        return false;
    };
    for (const auto& ed : t.edges) {
        if (ed.n_tri == 2) {
            const bool d0 = directed_in(ed.tri[0], ed.a, ed.b);
            const bool d1 = directed_in(ed.tri[1], ed.a, ed.b);
            if (d0 == d1) throw Error(errc::non_orientable, "inconsistent triangle orientation");
        }
    }

    // vertex incidence and adjacency
    t.vertex_triangles.assign(t.vertex_count, {});
    for (int f = 0; f < (int)triangles.size(); ++f)
        for (int k = 0; k < 3; ++k) t.vertex_triangles[triangles[f][k]].push_back(f);
    t.neighbors.assign(t.vertex_count, {});
    for (const auto& ed : t.edges) {
        t.neighbors[ed.a].push_back(ed.b);
        t.neighbors[ed.b].push_back(ed.a);
    }
    for (auto& nb : t.neighbors) std::sort(nb.begin(), nb.end());

    for (int v = 0; v < t.vertex_count; ++v)
        if (t.vertex_triangles[v].empty())
            throw Error(errc::disconnected_surface, "isolated vertex " + std::to_string(v));

    // connectivity over the triangle adjacency graph
    {
        std::vector<char> seen(triangles.size(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (int k = 0; k < 3; ++k) {
                const auto& ed = t.edges[t.tri_edges[f][k]];
                for (int s = 0; s < ed.n_tri; ++s) {
                    int g = ed.tri[s];
                    if (g != f && !seen[g]) {
                        seen[g] = 1;
                        ++cnt;
                        q.push(g);
                    }
                }
            }
        }
        if (cnt != (int)triangles.size())
            throw Error(errc::disconnected_surface, "triangulation is not connected");
    }

    // boundary structure: directed boundary edges follow the triangle
    // orientation, so each boundary vertex of a manifold surface has exactly
    // one outgoing boundary edge
    t.on_boundary.assign(t.vertex_count, 0);
    std::map<int, int> boundary_next;  // u -> v along the directed boundary
    for (const auto& ed : t.edges) {
        if (ed.n_tri != 1) continue;
        const int f = ed.tri[0];
        int u = ed.a, v = ed.b;
        if (!directed_in(f, u, v)) std::swap(u, v);
        // interior is on the left of u->v inside f; the boundary cycle keeps
        // the surface on its left when traversed u->v
        if (boundary_next.count(u))
            throw Error(errc::non_manifold, "boundary pinch at vertex " + std::to_string(u));
        boundary_next[u] = v;
        t.on_boundary[u] = 1;
        t.on_boundary[v] = 1;
    }

    std::vector<std::vector<int>> cycles;
    {
        std::set<int> remaining;
        for (auto& [u, v] : boundary_next) remaining.insert(u);
        while (!remaining.empty()) {
            int start = *remaining.begin();
            std::vector<int> cyc;
            int u = start;
            do {
                cyc.push_back(u);
                remaining.erase(u);
                auto it = boundary_next.find(u);
                if (it == boundary_next.end())
                    throw Error(errc::non_manifold, "open boundary chain");
                u = it->second;
            } while (u != start);
            cycles.push_back(std::move(cyc));
        }
    }
    if (!cycles.empty()) {
        std::stable_sort(cycles.begin(), cycles.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });
        t.boundary_cycle = cycles[0];
        t.cycles_ = std::move(cycles);
    }
    return t;
}

void require_disk(const Triangulation& t) {
    if (t.boundary_cycle.empty())
        throw Error(errc::multiple_boundary_cycles, "closed surface where a disk is required");
    if (t.extra_cycles_count() > 0)
        throw Error(errc::multiple_boundary_cycles,
                    std::to_string(t.extra_cycles_count() + 1) + " boundary cycles");
    if (t.euler_characteristic() != 1)
        throw Error(errc::multiple_boundary_cycles,
                    "Euler characteristic " + std::to_string(t.euler_characteristic()) +
                        " but a disk requires 1");
}

std::vector<int> combinatorial_ball(const Triangulation& t, int v, int r) {
    if (v < 0 || v >= t.vertex_count) throw Error(errc::bad_input, "vertex out of range");
    if (r < 0) throw Error(errc::bad_input, "negative radius");
    std::vector<int> dist(t.vertex_count, -1);
    std::queue<int> q;
    dist[v] = 0;
    q.push(v);
    std::vector<int> out{v};
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (dist[u] == r) continue;
        for (int w : t.neighbors[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                out.push_back(w);
                q.push(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void validate_marks(const Triangulation& t, const std::array<int, 3>& marks) {
    if (marks[0] == marks[1] || marks[1] == marks[2] || marks[0] == marks[2])
        throw Error(errc::bad_input, "marks must be distinct");
    std::array<int, 3> pos{};
    for (int k = 0; k < 3; ++k) {
        auto it = std::find(t.boundary_cycle.begin(), t.boundary_cycle.end(), marks[k]);
        if (it == t.boundary_cycle.end())
            throw Error(errc::bad_input,
                        "mark " + std::to_string(marks[k]) + " is not a boundary vertex");
        pos[k] = (int)(it - t.boundary_cycle.begin());
    }
    // cyclic order along the boundary
    const bool ok = (pos[0] < pos[1] && pos[1] < pos[2]) ||
                    (pos[1] < pos[2] && pos[2] < pos[0]) ||
                    (pos[2] < pos[0] && pos[0] < pos[1]);
    if (!ok) throw Error(errc::bad_input, "marks are not in boundary-cycle order");
}

EquilateralComplex standard_subdivision(const EquilateralComplex& c, int n) {
    if (n < 1) throw Error(errc::bad_input, "subdivision level must be >= 1");
    const Triangulation& mt = c.tri;

    SubdivisionMap sm;
    sm.level = n;
    sm.macro_vertex_count = mt.vertex_count;
    sm.macro_triangles = mt.triangles;
    sm.grid.assign(mt.n_triangles(), std::vector<int>((n + 1) * (n + 2) / 2, -1));

    int next_id = mt.vertex_count;  // macro vertices keep their ids
    // interior points of macro edges, keyed by (edge, step from edge.a)
    std::vector<std::vector<int>> edge_points(mt.n_edges());
    for (int e = 0; e < mt.n_edges(); ++e) {
        edge_points[e].resize(std::max(0, n - 1));
        for (int s = 1; s < n; ++s) edge_points[e][s - 1] = next_id++;
    }

    std::vector<std::array<int, 3>> fine_tris;
    fine_tris.reserve((size_t)mt.n_triangles() * n * n);
    std::vector<Vec2> fine_pos;
    const bool has_pos = c.positions.has_value();

    auto grid_id = [&](int f, int u, int v) -> int& {
        return sm.grid[f][SubdivisionMap::grid_index(n, u, v)];
    };

    for (int f = 0; f < mt.n_triangles(); ++f) {
        const auto& tr = mt.triangles[f];
        for (int v = 0; v <= n; ++v) {
            for (int u = 0; u + v <= n; ++u) {
                const int w = n - u - v;  // coordinate at corner 0
                int id = -1;
                if (w == n) id = tr[0];
                else if (u == n) id = tr[1];
                else if (v == n) id = tr[2];
                else if (v == 0) {  // on macro edge (tr[0], tr[1])
                    const int e = mt.edge_index(tr[0], tr[1]);
                    const int s = (mt.edges[e].a == tr[0]) ? u : n - u;
                    id = edge_points[e][s - 1];
                } else if (u == 0) {  // on macro edge (tr[0], tr[2])
                    const int e = mt.edge_index(tr[0], tr[2]);
                    const int s = (mt.edges[e].a == tr[0]) ? v : n - v;
                    id = edge_points[e][s - 1];
                } else if (w == 0) {  // on macro edge (tr[1], tr[2])
                    const int e = mt.edge_index(tr[1], tr[2]);
                    const int s = (mt.edges[e].a == tr[1]) ? v : n - v;
                    id = edge_points[e][s - 1];
                } else {
                    id = next_id++;
                }
                grid_id(f, u, v) = id;
            }
        }
        for (int v = 0; v < n; ++v) {
            for (int u = 0; u + v < n; ++u) {
                fine_tris.push_back({grid_id(f, u, v), grid_id(f, u + 1, v), grid_id(f, u, v + 1)});
                if (u + v < n - 1)
                    fine_tris.push_back(
                        {grid_id(f, u + 1, v), grid_id(f, u + 1, v + 1), grid_id(f, u, v + 1)});
            }
        }
    }

    EquilateralComplex out;
    out.tri = build_triangulation(fine_tris);
    out.edge_length = c.edge_length / n;
    if (has_pos) {
        fine_pos.assign(out.tri.vertex_count, Vec2{});
        const auto& mp = *c.positions;
        for (int f = 0; f < mt.n_triangles(); ++f) {
            const auto& tr = mt.triangles[f];
            for (int v = 0; v <= n; ++v)
                for (int u = 0; u + v <= n; ++u) {
                    const int w = n - u - v;
                    fine_pos[grid_id(f, u, v)] =
                        (mp[tr[0]] * w + mp[tr[1]] * u + mp[tr[2]] * v) / n;
                }
        }
        out.positions = std::move(fine_pos);
    }
    out.macro = std::move(sm);
    return out;
}

bool point_strictly_inside(const std::vector<Vec2>& polygon, const Vec2& p) {
    const size_t n = polygon.size();
    // crossing-number parity
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = polygon[j];
        const Vec2& b = polygon[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            const double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < xint) inside = !inside;
        }
    }
    if (!inside) return false;
    return distance_to_polygon(polygon, p) > 0.0;
}

double distance_to_polygon(const std::vector<Vec2>& polygon, const Vec2& p) {
    double d = std::numeric_limits<double>::infinity();
    const size_t n = polygon.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = polygon[j];
        const Vec2& b = polygon[i];
        const Vec2 ab = b - a;
        const double len2 = dot(ab, ab);
        double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        d = std::min(d, dist(p, a + ab * t));
    }
    return d;
}

namespace {

struct LatticeTri {
    int n, m;
    bool up;
    bool operator<(const LatticeTri& o) const {
        return std::tie(m, n, up) < std::tie(o.m, o.n, o.up);
    }
};

struct HexBuild {
    Vec2 anchor;
    double delta;
    Vec2 lattice_point(int n, int m) const {
        return anchor + Vec2{delta * (n + 0.5 * m), delta * (0.8660254037844386 * m)};
    }
    std::array<std::pair<int, int>, 3> corners(const LatticeTri& t) const {
        if (t.up)
            return {{{t.n, t.m}, {t.n + 1, t.m}, {t.n, t.m + 1}}};
        return {{{t.n + 1, t.m}, {t.n + 1, t.m + 1}, {t.n, t.m + 1}}};
    }
};

struct BuiltMesh {
    Triangulation tri;
    std::vector<Vec2> pos;
    std::vector<LatticeTri> kept;
};

// assembles a Triangulation from lattice triangles; no validation beyond ids
BuiltMesh assemble(const HexBuild& hb, const std::vector<LatticeTri>& tris) {
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::array<int, 3>> tt;
    std::vector<Vec2> pos;
    tt.reserve(tris.size());
    for (const auto& lt : tris) {
        std::array<int, 3> tr;
        auto cs = hb.corners(lt);
        for (int k = 0; k < 3; ++k) {
            auto it = ids.find(cs[k]);
            if (it == ids.end()) {
                it = ids.emplace(cs[k], (int)pos.size()).first;
                pos.push_back(hb.lattice_point(cs[k].first, cs[k].second));
            }
            tr[k] = it->second;
        }
        tt.push_back(tr);
    }
    BuiltMesh bm;
    bm.tri = build_triangulation(tt);
    bm.pos = std::move(pos);
    bm.kept = tris;
    return bm;
}

// Repeatedly prunes the kept set until it forms a valid disk: keep the
// largest edge-connected component, split vertex pinches, and open up hole
// boundary cycles.  Deterministic (index-ordered tie breaks).
std::vector<LatticeTri> prune_to_disk(const HexBuild& hb, std::vector<LatticeTri> tris,
                                      int* dropped) {
    auto drop = [&](std::vector<LatticeTri>& v, const std::vector<char>& kill) {
        std::vector<LatticeTri> out;
        out.reserve(v.size());
        for (size_t i = 0; i < v.size(); ++i)
            if (!kill[i]) out.push_back(v[i]);
        if (dropped) *dropped += (int)(v.size() - out.size());
        return out;
    };

    for (int iter = 0; iter < 10000; ++iter) {
        if (tris.empty()) throw Error(errc::empty_intersection, "no lattice triangle fits");

        // edge-connected components on lattice keys
        std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, std::vector<int>> by_edge;
        for (int i = 0; i < (int)tris.size(); ++i) {
            auto cs = hb.corners(tris[i]);
            for (int k = 0; k < 3; ++k) {
                auto a = cs[k], b = cs[(k + 1) % 3];
                if (b < a) std::swap(a, b);
                by_edge[{a, b}].push_back(i);
            }
        }
        std::vector<int> comp(tris.size(), -1);
        int ncomp = 0;
        for (int s = 0; s < (int)tris.size(); ++s) {
            if (comp[s] >= 0) continue;
            std::queue<int> q;
            q.push(s);
            comp[s] = ncomp;
            while (!q.empty()) {
                int f = q.front();
                q.pop();
                auto cs = hb.corners(tris[f]);
                for (int k = 0; k < 3; ++k) {
                    auto a = cs[k], b = cs[(k + 1) % 3];
                    if (b < a) std::swap(a, b);
                    for (int g : by_edge[{a, b}])
                        if (comp[g] < 0) {
                            comp[g] = ncomp;
                            q.push(g);
                        }
                }
            }
            ++ncomp;
        }
        if (ncomp > 1) {
            std::vector<int> size(ncomp, 0);
            for (int c : comp) ++size[c];
            int best = (int)(std::max_element(size.begin(), size.end()) - size.begin());
            std::vector<char> kill(tris.size(), 0);
            for (size_t i = 0; i < tris.size(); ++i) kill[i] = comp[i] != best;
            tris = drop(tris, kill);
            continue;
        }

        // vertex pinches: triangles around a lattice vertex must form one fan
        {
            std::map<std::pair<int, int>, std::vector<int>> by_vertex;
            for (int i = 0; i < (int)tris.size(); ++i)
                for (auto& c : hb.corners(tris[i])) by_vertex[c].push_back(i);
            std::vector<char> kill(tris.size(), 0);
            bool pinched = false;
            for (auto& [v, inc] : by_vertex) {
                if (inc.size() < 2) continue;
                // union by shared edges incident to v
                std::map<int, int> local;
                for (int i = 0; i < (int)inc.size(); ++i) local[inc[i]] = i;
                std::vector<int> parent(inc.size());
                std::iota(parent.begin(), parent.end(), 0);
                std::function<int(int)> find = [&](int x) {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                for (int i : inc) {
                    auto cs = hb.corners(tris[i]);
                    for (int k = 0; k < 3; ++k) {
                        auto a = cs[k], b = cs[(k + 1) % 3];
                        if (a != v && b != v) continue;
                        auto key = a;
                        if (b < a) std::swap(a, b);
                        for (int g : by_edge[{a, b}])
                            if (g != i && local.count(g)) parent[find(local[i])] = find(local[g]);
                        (void)key;
                    }
                }
                std::map<int, std::vector<int>> fans;
                for (int i = 0; i < (int)inc.size(); ++i) fans[find(i)].push_back(inc[i]);
                if (fans.size() > 1) {
                    pinched = true;
                    // keep the largest fan (ties: the one containing the lowest index)
                    auto best = fans.begin();
                    for (auto it = fans.begin(); it != fans.end(); ++it)
                        if (it->second.size() > best->second.size() ||
                            (it->second.size() == best->second.size() &&
                             it->second.front() < best->second.front()))
                            best = it;
                    for (auto& [root, members] : fans)
                        if (root != best->first)
                            for (int i : members) kill[i] = 1;
                }
            }
            if (pinched) {
                tris = drop(tris, kill);
                continue;
            }
        }

        // holes: more than one boundary cycle
        BuiltMesh bm = assemble(hb, tris);
        if (bm.tri.euler_characteristic() == 1 && bm.tri.extra_cycles_count() == 0 &&
            !bm.tri.boundary_cycle.empty())
            return tris;

        // remove triangles touching every non-outer boundary cycle; the outer
        // cycle is the one with the largest bounding box
        std::vector<std::vector<int>> cycles = bm.tri.all_boundary_cycles();
        int outer = 0;
        double best_extent = -1;
        for (int c = 0; c < (int)cycles.size(); ++c) {
            double lo = 1e300, hi = -1e300;
            for (int v : cycles[c]) {
                lo = std::min(lo, bm.pos[v].x);
                hi = std::max(hi, bm.pos[v].x);
            }
            if (hi - lo > best_extent) {
                best_extent = hi - lo;
                outer = c;
            }
        }
        std::vector<char> on_hole(bm.tri.vertex_count, 0);
        for (int c = 0; c < (int)cycles.size(); ++c)
            if (c != outer)
                for (int v : cycles[c]) on_hole[v] = 1;
        std::vector<char> kill(tris.size(), 0);
        bool any = false;
        for (int f = 0; f < (int)tris.size(); ++f)
            for (int k = 0; k < 3; ++k)
                if (on_hole[bm.tri.triangles[f][k]]) {
                    kill[f] = 1;
                    any = true;
                    break;
                }
        if (!any)  // no hole cycles found; χ defect we cannot fix locally
            throw Error(errc::empty_intersection, "lattice region does not clean up to a disk");
        tris = drop(tris, kill);
    }
    throw Error(errc::empty_intersection, "disk cleanup did not terminate");
}

}  // namespace

EquilateralComplex hex_extract(const std::vector<Vec2>& polygon, double delta, int* dropped) {
    if (polygon.size() < 3) throw Error(errc::bad_input, "polygon needs at least 3 vertices");
    if (!(delta > 0)) throw Error(errc::bad_input, "delta must be positive");

    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& p : polygon) {
        minx = std::min(minx, p.x);
        miny = std::min(miny, p.y);
        maxx = std::max(maxx, p.x);
        maxy = std::max(maxy, p.y);
    }
    HexBuild hb{Vec2{minx, miny}, delta};
    const double row_h = delta * 0.8660254037844386;
    const int m_hi = (int)std::ceil((maxy - miny) / row_h) + 1;
    const int n_hi = (int)std::ceil((maxx - minx) / delta) + 1;

    std::vector<LatticeTri> inside;
    for (int m = -1; m <= m_hi; ++m) {
        for (int n = -1 - (m_hi + 1) / 2 - m; n <= n_hi + 1; ++n) {
            for (int up = 0; up < 2; ++up) {
                LatticeTri lt{n, m, up == 1};
                auto cs = hb.corners(lt);
                Vec2 centroid{0, 0};
                bool ok = true;
                for (auto& c : cs) {
                    Vec2 p = hb.lattice_point(c.first, c.second);
                    centroid += p / 3.0;
                    if (!point_strictly_inside(polygon, p)) {
                        ok = false;
                        break;
                    }
                }
                if (ok && point_strictly_inside(polygon, centroid)) inside.push_back(lt);
            }
        }
    }
    if (inside.empty()) throw Error(errc::empty_intersection, "delta too large for the polygon");
    std::sort(inside.begin(), inside.end());

    int local_dropped = 0;
    auto kept = prune_to_disk(hb, inside, &local_dropped);
    if (dropped) *dropped = local_dropped;
    BuiltMesh bm = assemble(hb, kept);

    EquilateralComplex out;
    out.tri = std::move(bm.tri);
    out.edge_length = delta;
    out.positions = std::move(bm.pos);
    return out;
}

namespace {

// boundary vertices with exactly one incident triangle have curvature 2*pi/3
std::vector<int> convex_corner_vertices(const Triangulation& t) {
    std::vector<int> out;
    for (int v : t.boundary_cycle)
        if (t.vertex_triangles[v].size() == 1) out.push_back(v);
    return out;
}

}  // namespace

HexApproxResult hex_approximate(const std::vector<Vec2>& polygon,
                                const std::array<Vec2, 3>& marks, double delta) {
    HexApproxResult res;
    int dropped = 0;
    EquilateralComplex c = hex_extract(polygon, delta, &dropped);
    res.dropped_triangles = dropped;

    std::array<int, 3> mv{-1, -1, -1};
    for (int k = 0; k < 3; ++k) {
        for (int attempt = 0;; ++attempt) {
            const auto& pos = *c.positions;
            int best = -1;
            double best_d = 6.0 * delta;
            for (int v : convex_corner_vertices(c.tri)) {
                if (v == mv[0] || v == mv[1]) continue;
                const double d = dist(pos[v], marks[k]);
                if (d < best_d || (d == best_d && (best < 0 || v < best))) {
                    best_d = d;
                    best = v;
                }
            }
            if (best >= 0) {
                mv[k] = best;
                break;
            }
            if (attempt >= 1)
                throw Error(errc::no_convex_corner,
                            "no curvature-2pi/3 boundary vertex near mark " + std::to_string(k));
            // carve a 60-degree notch: delete the boundary triangle nearest
            // the mark and re-validate
            int carve = -1;
            double carve_d = 1e300;
            for (int f = 0; f < c.tri.n_triangles(); ++f) {
                bool on_bd = false;
                for (int e : c.tri.tri_edges[f])
                    if (c.tri.is_boundary_edge(e)) on_bd = true;
                if (!on_bd) continue;
                Vec2 cen = (pos[c.tri.triangles[f][0]] + pos[c.tri.triangles[f][1]] +
                            pos[c.tri.triangles[f][2]]) /
                           3.0;
                const double d = dist(cen, marks[k]);
                if (d < carve_d) {
                    carve_d = d;
                    carve = f;
                }
            }
            if (carve < 0) throw Error(errc::no_convex_corner, "nothing left to carve");
            // rebuild without that triangle, re-running the disk cleanup
            std::vector<std::array<int, 3>> tt;
            for (int f = 0; f < c.tri.n_triangles(); ++f)
                if (f != carve) tt.push_back(c.tri.triangles[f]);
            if (tt.empty()) throw Error(errc::empty_intersection, "carved mesh is empty");
            // positions keyed by old ids; assemble fresh compact mesh
            std::vector<Vec2> old_pos = *c.positions;
            std::vector<int> remap(c.tri.vertex_count, -1);
            std::vector<Vec2> new_pos;
            for (auto& tr : tt)
                for (int& v : tr) {
                    if (remap[v] < 0) {
                        remap[v] = (int)new_pos.size();
                        new_pos.push_back(old_pos[v]);
                    }
                    v = remap[v];
                }
            for (int kk = 0; kk < 3; ++kk)
                if (mv[kk] >= 0) mv[kk] = remap[mv[kk]];
            c.tri = build_triangulation(tt);
            c.positions = std::move(new_pos);
            ++res.carved_triangles;
            require_disk(c.tri);
        }
    }
    require_disk(c.tri);
    // order the selected vertices along the boundary cycle in the cyclic
    // orientation matching the input marks (input marks are given in cyclic
    // polygon order; the mesh boundary cycle uses the mesh orientation)
    {
        std::array<int, 3> pos_in_cycle{};
        for (int k = 0; k < 3; ++k) {
            auto it = std::find(c.tri.boundary_cycle.begin(), c.tri.boundary_cycle.end(), mv[k]);
            if (it == c.tri.boundary_cycle.end())
                throw Error(errc::no_convex_corner, "selected mark not on boundary");
            pos_in_cycle[k] = (int)(it - c.tri.boundary_cycle.begin());
        }
        const bool cyclic = (pos_in_cycle[0] < pos_in_cycle[1] && pos_in_cycle[1] < pos_in_cycle[2]) ||
                            (pos_in_cycle[1] < pos_in_cycle[2] && pos_in_cycle[2] < pos_in_cycle[0]) ||
                            (pos_in_cycle[2] < pos_in_cycle[0] && pos_in_cycle[0] < pos_in_cycle[1]);
        if (!cyclic) std::swap(mv[1], mv[2]);
    }

    res.disk.complex = std::move(c);
    res.disk.marks = mv;
    validate_marks(res.disk.complex.tri, mv);

    // two-sided boundary distance estimate
    double h = 0.0;
    const auto& pos = *res.disk.complex.positions;
    std::vector<Vec2> bd_pts;
    for (int v : res.disk.complex.tri.boundary_cycle) {
        h = std::max(h, distance_to_polygon(polygon, pos[v]));
        bd_pts.push_back(pos[v]);
    }
    const size_t nb = bd_pts.size();
    for (size_t i = 0; i < polygon.size(); ++i) {
        double d = 1e300;
        for (size_t j = 0, jp = nb - 1; j < nb; jp = j++) {
            const Vec2 a = bd_pts[jp], b = bd_pts[j];
            const Vec2 ab = b - a;
            const double len2 = dot(ab, ab);
            double tt = len2 > 0 ? std::clamp(dot(polygon[i] - a, ab) / len2, 0.0, 1.0) : 0.0;
            d = std::min(d, dist(polygon[i], a + ab * tt));
        }
        h = std::max(h, d);
    }
    res.boundary_hausdorff = h;
    return res;
}

}  // namespace dcu
