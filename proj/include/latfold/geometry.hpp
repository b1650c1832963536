#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "latfold/errors.hpp"
#include "latfold/rational.hpp"

namespace latfold {

// Exact point/vector in units of the cubic unit-cell edge.
struct Rat3 {
    Rational x, y, z;

    friend Rat3 operator+(const Rat3& a, const Rat3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Rat3 operator-(const Rat3& a, const Rat3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    Rat3 operator-() const { return {-x, -y, -z}; }
    friend Rat3 operator*(const Rational& s, const Rat3& v) {
        return {s * v.x, s * v.y, s * v.z};
    }
    friend bool operator==(const Rat3& a, const Rat3& b) = default;

    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }
    std::string str() const { return "(" + x.str() + ", " + y.str() + ", " + z.str() + ")"; }
};

inline Rational dot(const Rat3& a, const Rat3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Rat3 cross(const Rat3& a, const Rat3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Rational norm2(const Rat3& v) { return dot(v, v); }

// Signed volume det[a b c]; the chirality and torsion predicates live on its sign.
inline Rational det3(const Rat3& a, const Rat3& b, const Rat3& c) {
    return dot(a, cross(b, c));
}

// Proper rotation with exact rational entries, row-major.
struct Frame {
    std::array<Rational, 9> m;

    static Frame identity() {
        return {{1, 0, 0, 0, 1, 0, 0, 0, 1}};
    }

    const Rational& at(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
    Rational& at(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

    Rat3 apply(const Rat3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    friend Frame operator*(const Frame& a, const Frame& b) {
        Frame r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Rational s = 0;
                for (int k = 0; k < 3; ++k) s += a.at(i, k) * b.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    Frame transposed() const {
        Frame r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
        return r;
    }

    Rational det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    Rational trace() const { return m[0] + m[4] + m[8]; }

    bool is_orthogonal() const {
        Frame p = *this * transposed();
        return p == identity();
    }

    friend bool operator==(const Frame& a, const Frame& b) = default;

    // Lexicographic entry order; used only to make set output deterministic.
    friend bool operator<(const Frame& a, const Frame& b) {
        for (std::size_t i = 0; i < 9; ++i) {
            if (a.m[i] != b.m[i]) return a.m[i] < b.m[i];
        }
        return false;
    }
};

// Which of the two diamond basis sites a lattice point sits on. Bond
// directions negate between the sublattices, and the label flips on
// every bond step along a chain.
enum class Parity { A, B };

inline Parity flipped(Parity p) { return p == Parity::A ? Parity::B : Parity::A; }

// The four bond directions of the diamond lattice, in units of the
// cubic unit-cell edge:
//   e1 = ( 1/4,  1/4,  1/4)      e2 = ( 1/4, -1/4, -1/4)
//   e3 = (-1/4,  1/4, -1/4)      e4 = (-1/4, -1/4,  1/4)
inline const std::array<Rat3, 4>& bond_basis() {
    static const std::array<Rat3, 4> e = {{
        {{1, 4}, {1, 4}, {1, 4}},
        {{1, 4}, {-1, 4}, {-1, 4}},
        {{-1, 4}, {1, 4}, {-1, 4}},
        {{-1, 4}, {-1, 4}, {1, 4}},
    }};
    return e;
}

// Bond directions available at a site of the given parity, after the
// frame tracking any cis reorientation. Order is by basis index.
inline std::array<Rat3, 4> bond_directions(Parity parity, const Frame& frame) {
    std::array<Rat3, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        Rat3 v = frame.apply(bond_basis()[i]);
        out[i] = parity == Parity::A ? v : -v;
    }
    return out;
}

// 180-degree rotation about an arbitrary nonzero rational axis:
// R(v) = 2 (v.n)n - v. Exact for every rational axis because the
// projector n n^T has entries v_i v_j / |v|^2.
inline Frame rot_180_about(const Rat3& axis) {
    if (axis.is_zero()) throw exactness_error("180-degree rotation about zero axis");
    Rational n2 = norm2(axis);
    Frame r;
    const Rational two = 2;
    const std::array<Rational, 3> a = {axis.x, axis.y, axis.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational v = two * a[static_cast<std::size_t>(i)] *
                         a[static_cast<std::size_t>(j)] / n2;
            if (i == j) v -= 1;
            r.at(i, j) = v;
        }
    return r;
}

// +-120-degree rotation about bond direction e_i (axis_index 1..4).
// With u = 4 e_i (all components +-1) the Rodrigues form reduces to
// (u u^T - I + sign [u]x) / 2, a signed permutation matrix.
inline Frame rot_120_about(int axis_index, int sign) {
    if (axis_index < 1 || axis_index > 4)
        throw domain_error("bond axis index must be 1..4");
    if (sign != 1 && sign != -1) throw domain_error("rotation sign must be +-1");
    const Rat3& e = bond_basis()[static_cast<std::size_t>(axis_index - 1)];
    const Rational four = 4;
    const std::array<Rational, 3> u = {four * e.x, four * e.y, four * e.z};
    const Rational s = sign;
    const Rational half{1, 2};
    Frame r;
    // [u]x, the cross-product matrix of u
    const std::array<std::array<Rational, 3>, 3> ux = {{
        {Rational{0}, -u[2], u[1]},
        {u[2], Rational{0}, -u[0]},
        {-u[1], u[0], Rational{0}},
    }};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational v = u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];
            if (i == j) v -= 1;
            v += s * ux[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            r.at(i, j) = half * v;
        }
    return r;
}

// The tetrahedral group T: closure of the eight +-120-degree bond
// rotations. Exactly 12 proper rotations (1 identity, 4 + 4 three-fold,
// 3 two-fold); reflections are excluded. Sorted for deterministic order.
inline std::vector<Frame> proper_rotation_group() {
    std::vector<Frame> group = {Frame::identity()};
    std::vector<Frame> generators;
    for (int i = 1; i <= 4; ++i) {
        generators.push_back(rot_120_about(i, +1));
        generators.push_back(rot_120_about(i, -1));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Frame> next = group;
        for (const Frame& g : group)
            for (const Frame& h : generators) {
                Frame p = g * h;
                if (std::find(next.begin(), next.end(), p) == next.end()) {
                    next.push_back(p);
                    grew = true;
                }
            }
        group = std::move(next);
    }
    std::sort(group.begin(), group.end());
    return group;
}

// Largest set of equivalent, equidistant orientation states in d
// dimensions: the d-simplex has d+1 vertices.
inline int simplex_state_count(int d) {
    if (d < 1) throw domain_error("simplex dimension must be >= 1");
    return d + 1;
}

}  // namespace latfold

template <>
struct std::hash<latfold::Rat3> {
    std::size_t operator()(const latfold::Rat3& v) const noexcept {
        std::hash<latfold::Rational> h;
        std::size_t r = h(v.x);
        r ^= h(v.y) + 0x9e3779b97f4a7c15ULL + (r << 6) + (r >> 2);
        r ^= h(v.z) + 0x9e3779b97f4a7c15ULL + (r << 6) + (r >> 2);
        return r;
    }
};
