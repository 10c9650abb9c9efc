#pragma once

#include <span>
#include <vector>

#include "pht/linalg.hpp"
#include "pht/pseudo.hpp"

namespace pht {

/// C(t) on a time grid and chi(t) = 2 Im C(t) Theta(t) (hbar = 1).
struct ResponseSeries {
    std::vector<double> times;
    std::vector<Complex> c_values;
    std::vector<double> chi_values;
};

/// One term c e^{-i omega t} of the correlation function.
struct SpectralTerm {
    Complex amplitude;
    Complex frequency;
};

struct SpectralResponse {
    std::vector<SpectralTerm> terms;

    Complex evaluate(double t) const;
};

struct SusceptibilitySpectrum {
    std::vector<double> omegas;
    std::vector<Complex> chi_omega;
    double broadening = 0.0;
};

enum class EnvelopeKind { Undamped, Damped, Amplified, Zero };

struct Envelope {
    EnvelopeKind kind = EnvelopeKind::Zero;
    double rate = 0.0;  // fitted d/dt log|chi| at the peaks
    std::size_t peaks = 0;
};

const char* to_string(EnvelopeKind kind);

inline constexpr double kPruneThreshold = 1e-14;

/// C(t) = <psi0| (eta A(t)) (eta A(0)) |psi0>, summed over the eigenbasis terms at every grid point.
ResponseSeries correlation(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es,
                           const Observable& a, std::span<const double> times);

/// Exact term list of C(t); terms with |c| below kPruneThreshold times the largest |c| are dropped.
/// Terms are ordered by (bra index, ket index) of the eigenbasis double sum.
SpectralResponse spectral_decomposition(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es,
                                        const Observable& a);

/// chi(omega) = int_0^inf e^{i omega t - broadening t} 2 Im C(t) dt, summed term by term.
SusceptibilitySpectrum susceptibility_spectrum(const SpectralResponse& sr, std::span<const double> omegas,
                                               double broadening);

/// Classifies chi(t) by a least-squares fit of log|chi| at its local maxima.
Envelope envelope_classification(const ResponseSeries& rs, double undamped_threshold = 1e-3,
                                 std::size_t min_peaks = 5);

}  // namespace pht
