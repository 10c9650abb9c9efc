#pragma once

#include <array>
#include <cstddef>

#include "pht/linalg.hpp"
#include "pht/pseudo.hpp"

namespace pht {

/// H = delta * sigma_x + i * gamma * sigma_z
struct SingleQubitParams {
    double delta = 1.0;
    double gamma = 0.0;
};

enum class GainConvention {
    Full,  // gain term (-1)^i * i * gamma * sigma_z^i
    Half,  // gain term (-1)^i * i * (gamma/2) * sigma_z^i
};

enum class Topology { NearestNeighbor, AllPairs };

struct QubitArrayParams {
    int m = 2;
    double delta = 1.0;
    double epsilon = 0.0;
    double gamma = 0.0;
    double g = 0.0;
    GainConvention gain_convention = GainConvention::Full;
    Topology topology = Topology::NearestNeighbor;
};

/// Monic quartic, coefficients of E^4 ... E^0.
struct SecularPolynomial {
    std::array<Complex, 5> coefficients{};
};

inline constexpr int kMaxQubits = 12;  // 2^12 = 4096 basis states

ComplexMatrix single_qubit_hamiltonian(const SingleQubitParams& p);

/// Analytic reference values for the single qubit, index 0 = "-", 1 = "+".
/// Eigenvectors use the closed-form normalization (left vectors with first
/// component 1/sqrt(2)); `matrix_elements(m, n)` holds the reference values of
/// <m| Sigma^z |n> in the bi-orthogonal eigenbasis.
struct SingleQubitClosedForms {
    bool broken = false;
    double energy = 0.0;  // E = sqrt(delta^2 - gamma^2), or sqrt(gamma^2 - delta^2) when broken
    std::array<Complex, 2> eigenvalues{};
    ComplexMatrix right;
    ComplexMatrix left;
    ComplexMatrix eta;
    ComplexMatrix sigma_z_lifted;
    ComplexMatrix matrix_elements;
};

SingleQubitClosedForms single_qubit_closed_forms(const SingleQubitParams& p);

/// sigma_z expectation from |up>: cos(2Et) + (gamma/E) sin(2Et), or its hyperbolic continuation.
double single_qubit_polarization(const SingleQubitParams& p, double t);

/// Reference correlation function from the ground eigenstate:
/// (delta^2/E^2) e^{-2iEt} when unbroken, (delta^2/E~^2) e^{-2E~t} when broken.
Complex single_qubit_correlation(const SingleQubitParams& p, double t);

ComplexMatrix qubit_array_hamiltonian(const QubitArrayParams& p);

/// Characteristic polynomial of the M = 2 array Hamiltonian:
///   E^4 + (gp^2 - delta^2 - g^2 - eps^2) E^2 - g delta^2 E + eps^2 (g^2 - gp^2)
/// with gp = gamma under the Half convention and gp = 2 gamma under Full.
SecularPolynomial secular_polynomial(const QubitArrayParams& p);

ComplexMatrix total_polarization(int m);

/// True iff P conj(H) P^-1 = H with P the qubit-reversal permutation.
bool check_pt_symmetry(const ComplexMatrix& h, int m, double tol = 1e-10);

/// Right eigenvector of the lowest eigenvalue (ascending Re, then Im).
StateVector ground_state(const EigenSystem& es);

}  // namespace pht
