#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "latfold/errors.hpp"
#include "latfold/rational.hpp"

namespace latfold {

// The sp3 hybridisation matrix: rows are the tetrahedral hybrid states
// (alpha, beta, gamma, delta), columns the atomic orbitals (s, px, py, pz).
// Every entry is +-1/2; the rows are orthonormal, so M M^T = I exactly.
struct Sp3Transform {
    std::array<std::array<Rational, 4>, 4> m;

    const Rational& at(int row, int col) const {
        return m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    }
};

inline Sp3Transform sp3_transform() {
    const Rational h{1, 2};
    Sp3Transform t;
    t.m = {{
        {h, h, h, h},
        {h, h, -h, -h},
        {h, -h, h, -h},
        {h, -h, -h, h},
    }};
    return t;
}

// Largest number of items distinguishable by q binary quantum queries:
// the N solving (2q+1) arcsin(1/sqrt(N)) = pi/2, i.e.
// N = 1 / sin^2(pi / (2(2q+1))). Fractional N means the search carries an
// intrinsic error at the nearest integer sizes.
inline double grover_capacity(int queries) {
    if (queries < 1) throw domain_error("query count must be >= 1");
    double s = std::sin(M_PI / (2.0 * (2.0 * queries + 1.0)));
    return 1.0 / (s * s);
}

// Closed-form success probability of q Grover iterations on N items:
// sin^2((2q+1) arcsin(1/sqrt(N))).
inline double grover_success_closed_form(double items, int queries) {
    if (items < 1) throw domain_error("item count must be >= 1");
    double s = std::sin((2.0 * queries + 1.0) * std::asin(1.0 / std::sqrt(items)));
    return s * s;
}

struct SearchInstance {
    std::uint64_t items = 4;   // N
    int queries = 1;           // q
    std::uint64_t marked = 0;  // index of the marked item, < N
};

// State-vector simulation of Grover search over N items (amplitudes are
// real throughout: the oracle is a phase flip and the diffusion an
// inversion about the mean). Returns the probability of measuring the
// marked item after q iterations from the uniform start.
inline double grover_simulate(const SearchInstance& instance) {
    if (instance.items < 2) throw domain_error("search needs at least 2 items");
    if (instance.queries < 1) throw domain_error("query count must be >= 1");
    if (instance.marked >= instance.items) throw domain_error("marked index out of range");
    if (instance.items > (1ULL << 24))
        throw domain_error("state vector capped at 2^24 items");

    const std::size_t n = static_cast<std::size_t>(instance.items);
    std::vector<double> amp(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < instance.queries; ++it) {
        amp[instance.marked] = -amp[instance.marked];
        double mean = 0;
        for (double a : amp) mean += a;
        mean /= static_cast<double>(n);
        for (double& a : amp) a = 2 * mean - a;
    }
    return amp[instance.marked] * amp[instance.marked];
}

struct AlphabetRow {
    int queries;
    double capacity;
    int floor_items;  // rounded down, the way the alphabets are counted
    std::string alphabet;
};

// The match between quantum-search capacities and the biological
// alphabets: 4 nucleotide bases, 10 amino acids for a doublet code,
// 20 for the triplet code.
inline std::vector<AlphabetRow> alphabet_table() {
    auto row = [](int q, const std::string& label) {
        double c = grover_capacity(q);
        return AlphabetRow{q, c, static_cast<int>(std::floor(c)), label};
    };
    return {
        row(1, "4 nucleotide bases"),
        row(2, "10 amino acids"),
        row(3, "20 amino acids"),
    };
}

}  // namespace latfold
