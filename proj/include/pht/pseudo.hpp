#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pht/linalg.hpp"

namespace pht {

enum class MetricConvention {
    UnitLeftVectors,  // eta assembled from the EigenSystem's own left vectors
    BlockRescaled,    // same, with caller-supplied positive factor per block
};

/// Hermitian pseudo-metric eta satisfying eta H = H^dagger eta.
struct MetricOperator {
    ComplexMatrix eta;
    ComplexMatrix eta_inverse;
    std::shared_ptr<const EigenSystem> source;
    MetricConvention convention = MetricConvention::UnitLeftVectors;
    std::vector<double> block_scales;
    /// max |eta - eta^dagger| before symmetrization
    double symmetrization_residual = 0.0;
};

struct Observable {
    ComplexMatrix hermitian_form;  // a
    ComplexMatrix lifted_form;     // A = eta^-1 a
    std::string label;
};

enum class NormConvention { Euclidean, Biorthogonal };

struct StateVector {
    ComplexVector amplitudes;
    NormConvention convention = NormConvention::Euclidean;

    /// Scales `v` to unit Euclidean norm.
    static StateVector euclidean(ComplexVector v);
    /// Right eigenvector n with <L_n|R_n> = 1.
    static StateVector eigenstate(const EigenSystem& es, std::size_t n);
};

/// Number of independent blocks of eta: one per real eigenvalue, one per conjugate pair.
std::size_t metric_block_count(const EigenSystem& es);

MetricOperator build_eta(const EigenSystem& es);

/// eta with every block multiplied by a positive factor. Blocks are ordered by
/// the index of their real eigenvalue or of their PairPlus member.
MetricOperator build_eta_scaled(const EigenSystem& es, std::span<const double> block_scales);

bool check_pseudo_hermitian(const ComplexMatrix& h, const MetricOperator& eta, double tol = 1e-8);

Observable lift_observable(const MetricOperator& eta, const ComplexMatrix& a, std::string label = {},
                           double tol = kDefaultTol);

StateVector propagate_state(const EigenSystem& es, const StateVector& psi0, double t);

/// e^{iHt} A e^{-iHt}, assembled in the eigenbasis.
ComplexMatrix heisenberg_operator(const EigenSystem& es, const ComplexMatrix& a, double t);

/// <psi0| eta A(t) |psi0>
Complex expectation(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es,
                    const Observable& a, double t);

/// <psi| eta |psi>; throws NotHermitian if the imaginary part exceeds tol (relative).
double generalized_norm(const StateVector& psi, const MetricOperator& eta, double tol = 1e-8);

}  // namespace pht
