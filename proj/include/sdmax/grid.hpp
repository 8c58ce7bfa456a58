#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace sdmax {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    friend Vec3 cross(Vec3 a, Vec3 b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
};

struct CVec3 {
    std::complex<double> x, y, z;
};

/// Periodic box sampled on a uniform lattice: n points per axis in 1 or 3
/// dimensions, positions x_j = j * L / n, wavevectors k = (2 pi / L) * m with
/// integer m in [-n/2, n/2). "volume" is L^d, the measure of the discrete
/// integral dV * sum over points.
struct GridSpec {
    double box_length;
    int points_per_axis;
    int dimensions;

    GridSpec(double box_length_, int points_per_axis_, int dimensions_)
        : box_length(box_length_), points_per_axis(points_per_axis_), dimensions(dimensions_) {
        if (!(box_length > 0.0)) throw std::invalid_argument("GridSpec: box length must be > 0");
        if (dimensions != 1 && dimensions != 3)
            throw std::invalid_argument("GridSpec: dimensions must be 1 or 3");
        if (points_per_axis < 4 || (points_per_axis & (points_per_axis - 1)) != 0)
            throw std::invalid_argument("GridSpec: points per axis must be a power of two >= 4");
    }

    std::size_t num_points() const {
        std::size_t n = static_cast<std::size_t>(points_per_axis);
        return dimensions == 1 ? n : n * n * n;
    }
    double dx() const { return box_length / points_per_axis; }
    double dk() const { return 2.0 * std::numbers::pi / box_length; }
    double volume() const { return std::pow(box_length, dimensions); }
    double cell_volume() const { return std::pow(dx(), dimensions); }

    /// Largest |m| such that both +m and -m are representable lattice indices.
    int max_mode_index() const { return points_per_axis / 2 - 1; }

    /// Lattice index m in [-n/2, n/2) -> array slot in [0, n).
    int wrap(int m) const {
        if (m < -points_per_axis / 2 || m >= points_per_axis / 2)
            throw std::invalid_argument("GridSpec: lattice index out of band");
        return m >= 0 ? m : m + points_per_axis;
    }

    /// Array slot -> signed lattice index.
    int unwrap(int slot) const {
        return slot < points_per_axis / 2 ? slot : slot - points_per_axis;
    }

    std::size_t flatten(int sx, int sy, int sz) const {
        const std::size_t n = static_cast<std::size_t>(points_per_axis);
        return (static_cast<std::size_t>(sx) * n + static_cast<std::size_t>(sy)) * n +
               static_cast<std::size_t>(sz);
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.box_length == b.box_length && a.points_per_axis == b.points_per_axis &&
               a.dimensions == b.dimensions;
    }
};

}  // namespace sdmax
