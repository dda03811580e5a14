#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hyqgnn/errors.hpp"

// Vector helpers live directly in hyqgnn so unqualified arithmetic on Vec3
// (a plain std::array, which ADL cannot route here) resolves from any nested
// namespace of the library.
namespace hyqgnn {

using Vec3 = std::array<double, 3>;
using Mat33 = std::array<Vec3, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

}  // namespace hyqgnn

namespace hyqgnn::core {

using hyqgnn::Mat33;
using hyqgnn::Vec3;
using hyqgnn::dot;
using hyqgnn::norm;

inline double determinant(const Mat33& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Periodic cell. Row i of `rows` is lattice vector a_i in Angstrom.
struct Lattice {
    Mat33 rows{};

    Lattice() = default;
    explicit Lattice(const Mat33& m) : rows(m) {
        if (volume() <= 0.0) {
            throw InvalidComposition("lattice cell volume must be positive");
        }
    }

    static Lattice cubic(double a) {
        return Lattice(Mat33{Vec3{a, 0, 0}, Vec3{0, a, 0}, Vec3{0, 0, a}});
    }

    double volume() const { return determinant(rows); }

    /// Fractional -> Cartesian (Angstrom).
    Vec3 to_cartesian(const Vec3& frac) const {
        Vec3 c{0, 0, 0};
        for (int i = 0; i < 3; ++i) {
            c = c + frac[i] * rows[i];
        }
        return c;
    }

    /// Reciprocal lattice vectors b_i with b_i . a_j = 2*pi*delta_ij.
    Mat33 reciprocal_rows() const {
        const Vec3& a0 = rows[0];
        const Vec3& a1 = rows[1];
        const Vec3& a2 = rows[2];
        auto cross = [](const Vec3& u, const Vec3& v) -> Vec3 {
            return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        };
        const double v = volume();
        const double f = 2.0 * M_PI / v;
        return Mat33{f * cross(a1, a2), f * cross(a2, a0), f * cross(a0, a1)};
    }
};

/// Wraps a fractional coordinate into [0, 1).
inline double wrap_frac(double x) {
    double w = x - std::floor(x);
    if (w >= 1.0) w -= 1.0;  // floor rounding at exact integers
    return w;
}

inline Vec3 wrap_frac(const Vec3& v) { return {wrap_frac(v[0]), wrap_frac(v[1]), wrap_frac(v[2])}; }

/// Minimum-image distance between two fractional positions, searching the
/// 27 neighbor images (offsets in {-1,0,1}^3) after mod-1 wrapping.
inline double min_image_distance(const Lattice& lattice, const Vec3& a, const Vec3& b) {
    const Vec3 d = wrap_frac(b) - wrap_frac(a);
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            for (int k = -1; k <= 1; ++k) {
                const Vec3 frac{d[0] + i, d[1] + j, d[2] + k};
                best = std::min(best, norm(lattice.to_cartesian(frac)));
            }
        }
    }
    return best;
}

}  // namespace hyqgnn::core
