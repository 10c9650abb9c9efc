#include "pht/response.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace pht {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_consistent(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es, const Observable& a) {
    const auto n = static_cast<Eigen::Index>(es.dim());
    if (psi0.amplitudes.size() != n || eta.eta.rows() != n || a.lifted_form.rows() != n) {
        throw DimensionMismatch("response: state, metric, eigensystem and observable dimensions differ");
    }
}

// Pieces of C(t) = sum_{k,n} bra_k e^{iE_k t} M_kn e^{-iE_n t} ket_n.
struct BasisForm {
    ComplexVector bra;  // <psi0| eta |R_k>
    ComplexMatrix m;    // <L_k| A |R_n>
    ComplexVector ket;  // <L_n| eta A |psi0>
};

BasisForm basis_form(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es, const Observable& a) {
    BasisForm f;
    f.bra = (es.right.adjoint() * (eta.eta * psi0.amplitudes)).conjugate();
    f.m = es.left.adjoint() * a.lifted_form * es.right;
    f.ket = es.left.adjoint() * (eta.eta * (a.lifted_form * psi0.amplitudes));
    return f;
}

}  // namespace

const char* to_string(EnvelopeKind kind) {
    switch (kind) {
    case EnvelopeKind::Undamped: return "undamped";
    case EnvelopeKind::Damped: return "damped";
    case EnvelopeKind::Amplified: return "amplified";
    case EnvelopeKind::Zero: return "zero";
    }
    return "unknown";
}

Complex SpectralResponse::evaluate(double t) const {
    Complex sum = 0.0;
    for (const auto& term : terms) sum += term.amplitude * std::exp(-kI * term.frequency * t);
    return sum;
}

namespace {

// Non-negligible terms c_kn = bra_k M_kn ket_n with their frequencies E_n - E_k.
// Terms that vanish analytically survive as roundoff; in a broken phase they can
// carry a growing exponential, so anything below kPruneThreshold relative to the
// largest term is dropped.
SpectralResponse collect_terms(const BasisForm& f, const EigenSystem& es) {
    const auto n = static_cast<Eigen::Index>(es.dim());
    ComplexMatrix c(n, n);
    double largest = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = 0; j < n; ++j) {
            c(k, j) = f.bra[k] * f.m(k, j) * f.ket[j];
            largest = std::max(largest, std::abs(c(k, j)));
        }
    }
    SpectralResponse sr;
    if (largest == 0.0) return sr;
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(c(k, j)) < kPruneThreshold * largest) continue;
            const Complex omega = es.eigenvalues[static_cast<std::size_t>(j)] - es.eigenvalues[static_cast<std::size_t>(k)];
            sr.terms.push_back({c(k, j), omega});
        }
    }
    return sr;
}

}  // namespace

ResponseSeries correlation(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es,
                           const Observable& a, std::span<const double> times) {
    require_consistent(psi0, eta, es, a);
    if (times.empty()) throw InvalidParameter("correlation: time grid is empty");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw InvalidParameter("correlation: time grid must be strictly increasing");
    }
    const auto sr = collect_terms(basis_form(psi0, eta, es, a), es);

    ResponseSeries rs;
    rs.times.assign(times.begin(), times.end());
    rs.c_values.resize(times.size());
    rs.chi_values.resize(times.size());
    for (std::size_t s = 0; s < times.size(); ++s) {
        const Complex c = sr.evaluate(times[s]);
        rs.c_values[s] = c;
        rs.chi_values[s] = times[s] >= 0.0 ? 2.0 * c.imag() : 0.0;
    }
    return rs;
}

SpectralResponse spectral_decomposition(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es,
                                        const Observable& a) {
    require_consistent(psi0, eta, es, a);
    return collect_terms(basis_form(psi0, eta, es, a), es);
}

SusceptibilitySpectrum susceptibility_spectrum(const SpectralResponse& sr, std::span<const double> omegas,
                                               double broadening) {
    if (!(broadening > 0.0) || !std::isfinite(broadening)) {
        throw InvalidParameter("susceptibility_spectrum: broadening must be positive");
    }
    for (const auto& term : sr.terms) {
        // |e^{-i omega t}| = e^{Im(omega) t}; the damped transform needs Im(omega) < broadening.
        if (term.frequency.imag() >= broadening) {
            throw DivergentTransform(fmt::format(
                "susceptibility_spectrum: term with frequency ({:.6g}, {:.6g}) grows faster than broadening {:.3g}",
                term.frequency.real(), term.frequency.imag(), broadening));
        }
    }
    SusceptibilitySpectrum out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.broadening = broadening;
    out.chi_omega.resize(omegas.size());
    for (std::size_t s = 0; s < omegas.size(); ++s) {
        const double w = omegas[s];
        Complex sum = 0.0;
        for (const auto& term : sr.terms) {
            const Complex direct = term.amplitude / (broadening + kI * (term.frequency - w));
            const Complex mirrored = std::conj(term.amplitude) / (broadening + kI * (-std::conj(term.frequency) - w));
            sum += (direct - mirrored) / kI;
        }
        out.chi_omega[s] = sum;
    }
    return out;
}

Envelope envelope_classification(const ResponseSeries& rs, double undamped_threshold, std::size_t min_peaks) {
    const auto& chi = rs.chi_values;
    double peak_max = 0.0;
    for (double v : chi) peak_max = std::max(peak_max, std::abs(v));
    Envelope env;
    if (peak_max < 1e-12) return env;

    std::vector<double> ts;
    std::vector<double> logs;
    const double floor = 1e-9 * peak_max;
    for (std::size_t k = 1; k + 1 < chi.size(); ++k) {
        const double v = std::abs(chi[k]);
        if (v > std::abs(chi[k - 1]) && v >= std::abs(chi[k + 1]) && v > floor) {
            ts.push_back(rs.times[k]);
            logs.push_back(std::log(v));
        }
    }
    env.peaks = ts.size();
    if (ts.size() < min_peaks) {
        throw InsufficientSpan(fmt::format("envelope_classification: found {} peaks, need at least {}", ts.size(), min_peaks));
    }

    const double n = static_cast<double>(ts.size());
    double mt = 0.0;
    double ml = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        mt += ts[k];
        ml += logs[k];
    }
    mt /= n;
    ml /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        sxy += (ts[k] - mt) * (logs[k] - ml);
        sxx += (ts[k] - mt) * (ts[k] - mt);
    }
    env.rate = sxy / sxx;
    if (std::abs(env.rate) < undamped_threshold) {
        env.kind = EnvelopeKind::Undamped;
    } else {
        env.kind = env.rate < 0.0 ? EnvelopeKind::Damped : EnvelopeKind::Amplified;
    }
    return env;
}

}  // namespace pht
