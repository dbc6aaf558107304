#pragma once

#include <random>

#include "robsyn/state_space.hpp"
#include "robsyn/types.hpp"

namespace robsyn::test {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

inline Matrix random_matrix(std::mt19937_64& g, int rows, int cols, double scale = 1.0) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = scale * uniform(g, -1.0, 1.0);
    }
    return m;
}

/// Random Hurwitz A with spectral abscissa at most -margin.
inline Matrix random_stable_a(std::mt19937_64& g, int n, double margin = 0.5) {
    Matrix a = random_matrix(g, n, n);
    const auto info = is_hurwitz(StateSpace(a, Matrix::Zero(n, 0), Matrix::Zero(0, n), Matrix::Zero(0, 0)));
    a -= (info.spectral_abscissa + margin) * Matrix::Identity(n, n);
    return a;
}

inline StateSpace random_stable_system(std::mt19937_64& g, int n, int m, int p,
                                       double margin = 0.5) {
    return StateSpace(random_stable_a(g, n, margin), random_matrix(g, n, m),
                      random_matrix(g, p, n), random_matrix(g, p, m));
}

}  // namespace robsyn::test
