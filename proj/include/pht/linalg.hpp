#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pht/errors.hpp"

namespace pht {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-10;

/// Throws DimensionMismatch for non-square or empty input, NonFinite on NaN/Inf entries.
void require_square_finite(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);

enum class SpectralTag { Real, PairPlus, PairMinus, Unpaired };

struct SpectralEntry {
    SpectralTag tag = SpectralTag::Real;
    std::size_t partner = 0;  // meaningful for PairPlus / PairMinus only
};

struct SpectralClassification {
    std::size_t n_real = 0;
    std::size_t n_pairs = 0;
    bool is_fully_real = true;
};

/// Eigenvalues with bi-orthonormal right/left eigenvectors stored column-wise.
///
/// Conventions: eigenvalues ascend by real part, ties (within tolerance) by
/// imaginary part; every left vector has unit Euclidean norm with its first
/// nonzero component real positive; right vectors satisfy <L_n|R_n> = 1.
struct EigenSystem {
    std::vector<Complex> eigenvalues;
    ComplexMatrix right;
    ComplexMatrix left;
    std::vector<SpectralEntry> classification;
    double tolerance_used = kDefaultTol;

    std::size_t dim() const { return eigenvalues.size(); }
    ComplexVector right_vector(std::size_t n) const { return right.col(static_cast<Eigen::Index>(n)); }
    ComplexVector left_vector(std::size_t n) const { return left.col(static_cast<Eigen::Index>(n)); }
};

EigenSystem eigendecompose(const ComplexMatrix& h, double tol = kDefaultTol);

/// Greedy conjugate pairing without throwing; leftovers are tagged Unpaired.
std::vector<SpectralEntry> pair_conjugates(std::span<const Complex> eigenvalues, double tol);

/// Throws UnpairableEigenvalue if some |Im E| > tol has no conjugate partner.
SpectralClassification classify_spectrum(const EigenSystem& es, double tol);

/// Roots of sum_k coeffs[k] * x^(deg-k), i.e. coefficients from the highest power down.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, double tol = 1e-12);

/// Smallest achievable max |a_i - b_perm(i)| over matchings of two equal-size multisets.
/// Exhaustive for sizes up to 8, greedy beyond.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

/// max_mn |<L_m|R_n> - delta_mn|
double biorthonormality_error(const EigenSystem& es);
/// max entry of sum_n |R_n><L_n| - I
double completeness_error(const EigenSystem& es);
/// max entry of H - sum_n E_n |R_n><L_n|
double reconstruction_error(const EigenSystem& es, const ComplexMatrix& h);

}  // namespace pht
