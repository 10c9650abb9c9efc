#pragma once

#include <random>

#include "pht/linalg.hpp"

namespace testing {

inline constexpr pht::Complex kI(0.0, 1.0);

inline pht::ComplexMatrix mat2(pht::Complex a, pht::Complex b, pht::Complex c, pht::Complex d) {
    pht::ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline pht::ComplexMatrix sigma_z() { return mat2(1.0, 0.0, 0.0, -1.0); }

// S D S^-1 with `pairs` complex-conjugate pairs and real eigenvalues elsewhere.
inline pht::ComplexMatrix random_pseudo_hermitian(std::mt19937_64& rng, int n, int pairs) {
    std::normal_distribution<double> normal;
    pht::ComplexMatrix d = pht::ComplexMatrix::Zero(n, n);
    int k = 0;
    for (; k < 2 * pairs; k += 2) {
        const pht::Complex z(normal(rng), 0.2 + std::abs(normal(rng)));
        d(k, k) = z;
        d(k + 1, k + 1) = std::conj(z);
    }
    for (; k < n; ++k) d(k, k) = normal(rng);
    pht::ComplexMatrix s = pht::ComplexMatrix::Identity(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) s(r, c) += 0.3 * pht::Complex(normal(rng), normal(rng));
    }
    return s * d * s.inverse();
}

inline pht::ComplexVector random_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> normal;
    pht::ComplexVector v(n);
    for (int k = 0; k < n; ++k) v[k] = pht::Complex(normal(rng), normal(rng));
    return v.normalized();
}

}  // namespace testing
