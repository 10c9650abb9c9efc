#pragma once

// Reference computations that share no code path with the library proper.
// They are slow and only meant for small matrices.

#include <vector>

#include "pht/linalg.hpp"
#include "pht/models.hpp"

namespace pht::oracle {

/// Laplace expansion along the first row.
Complex cofactor_determinant(const ComplexMatrix& m);

/// Coefficients of det(x I - m), highest power first, by Faddeev-LeVerrier.
std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m);

/// D = -4 p^3 - 27 q^2 for x^3 + p x + q. D > 0: three distinct real roots.
double cubic_discriminant(double p, double q);

/// Positive root g* of the M = 2, eps = 0, Full-convention discriminant along g, bracketed in [lo, hi].
double array_discriminant_root(double delta, double gamma, double lo, double hi);

/// Array Hamiltonian assembled from Kronecker products of 2x2 Pauli matrices.
ComplexMatrix kronecker_array_hamiltonian(const QubitArrayParams& p);

/// exp(-i H t) psi via a dense matrix exponential.
ComplexVector exponential_propagate(const ComplexMatrix& h, const ComplexVector& psi, double t);

/// <psi| a(t) a |psi> for Hermitian h, with a(t) = e^{iHt} a e^{-iHt} from a self-adjoint eigensolver.
std::vector<Complex> hermitian_correlation(const ComplexMatrix& h, const ComplexMatrix& a, const ComplexVector& psi,
                                           const std::vector<double>& times);

}  // namespace pht::oracle
