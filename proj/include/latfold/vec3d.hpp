#pragma once

#include <array>
#include <cmath>

#include "latfold/geometry.hpp"

namespace latfold {

// Plain double-precision vector for the measurement / fitting side.
// The exact lattice side stays rational; these appear only where angles
// or least-squares fits are inherently floating point.
struct Vec3d {
    double x = 0, y = 0, z = 0;

    friend Vec3d operator+(const Vec3d& a, const Vec3d& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Vec3d operator-(const Vec3d& a, const Vec3d& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    Vec3d operator-() const { return {-x, -y, -z}; }
    friend Vec3d operator*(double s, const Vec3d& v) { return {s * v.x, s * v.y, s * v.z}; }
};

inline double dot(const Vec3d& a, const Vec3d& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3d cross(const Vec3d& a, const Vec3d& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3d& v) { return std::sqrt(dot(v, v)); }

inline Vec3d to_vec3d(const Rat3& v) {
    return {v.x.to_double(), v.y.to_double(), v.z.to_double()};
}

namespace detail {

// Cyclic Jacobi eigensolver for small symmetric matrices. Returns
// eigenvalues (unsorted) and the column eigenvectors.
template <int N>
void jacobi_eigen(std::array<double, N * N>& a, std::array<double, N>& eigenvalues,
                  std::array<double, N * N>& vectors) {
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) vectors[static_cast<std::size_t>(i * N + j)] = i == j;
    auto at = [&](std::array<double, N * N>& m, int r, int c) -> double& {
        return m[static_cast<std::size_t>(r * N + c)];
    };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off += at(a, p, q) * at(a, p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) {
                double apq = at(a, p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (at(a, q, q) - at(a, p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (int k = 0; k < N; ++k) {
                    double akp = at(a, k, p), akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < N; ++k) {
                    double apk = at(a, p, k), aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < N; ++k) {
                    double vkp = at(vectors, k, p), vkq = at(vectors, k, q);
                    at(vectors, k, p) = c * vkp - s * vkq;
                    at(vectors, k, q) = s * vkp + c * vkq;
                }
            }
    }
    for (int i = 0; i < N; ++i)
        eigenvalues[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i * N + i)];
}

}  // namespace detail

struct Mat3d {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double at(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
    double& at(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

    Vec3d apply(const Vec3d& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

}  // namespace latfold
