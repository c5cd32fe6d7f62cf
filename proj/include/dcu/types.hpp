#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcu {

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }
// rotate v by angle t (counterclockwise)
inline Vec2 rotate(const Vec2& v, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

enum class errc {
    // mesh construction / validation
    non_manifold,
    non_orientable,
    disconnected_surface,
    multiple_boundary_cycles,
    empty_intersection,
    no_convex_corner,
    // metric kernels
    invalid_triangle,
    invalid_metric,
    degenerate_angle,
    degenerate_triangle,
    not_geometric_basis,
    // linear solves
    singular_system,
    non_convergence,
    // flows
    left_admissible_domain,
    step_underflow,
    balls_overlap,
    // layout
    inconsistent_development,
    degenerate_seed,
    not_a_triangle_boundary,
    degenerate_source_triangle,
    // i/o and arguments
    bad_input,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

}  // namespace dcu
