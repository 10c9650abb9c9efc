#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pht/grid.hpp"
#include "pht/models.hpp"
#include "pht/pseudo.hpp"
#include "pht/response.hpp"

using namespace pht;
using testing::kI;

namespace {

struct Setup {
    EigenSystem es;
    MetricOperator eta;
    Observable obs;
    StateVector psi;
};

Setup single_qubit(double gamma) {
    const auto es = eigendecompose(single_qubit_hamiltonian({1.0, gamma}));
    const auto eta = build_eta(es);
    auto obs = lift_observable(eta, testing::sigma_z());
    auto psi = ground_state(es);
    return {es, eta, std::move(obs), std::move(psi)};
}

Setup two_qubits(double eps, double g) {
    QubitArrayParams p;
    p.epsilon = eps;
    p.gamma = 0.2;
    p.g = g;
    const auto es = eigendecompose(qubit_array_hamiltonian(p));
    const auto eta = build_eta(es);
    auto obs = lift_observable(eta, total_polarization(2));
    auto psi = ground_state(es);
    return {es, eta, std::move(obs), std::move(psi)};
}

// Each expected term must appear once; the lists must have equal length.
void check_terms(const SpectralResponse& sr, const std::vector<SpectralTerm>& want, double tol) {
    REQUIRE(sr.terms.size() == want.size());
    std::vector<bool> used(want.size(), false);
    for (const auto& term : sr.terms) {
        bool found = false;
        for (std::size_t k = 0; k < want.size(); ++k) {
            if (used[k]) continue;
            if (std::abs(term.amplitude - want[k].amplitude) < tol && std::abs(term.frequency - want[k].frequency) < tol) {
                used[k] = true;
                found = true;
                break;
            }
        }
        CHECK_MESSAGE(found, "unexpected term ", term.amplitude, " at ", term.frequency);
    }
}

}  // namespace

TEST_CASE("single qubit has one surviving term") {
    const auto s = single_qubit(0.5);
    const auto sr = spectral_decomposition(s.psi, s.eta, s.es, s.obs);
    const double e = std::sqrt(0.75);
    check_terms(sr, {{Complex(4.0 / 3.0), Complex(2.0 * e)}}, 1e-12);

    const auto b = single_qubit(2.0);
    const auto srb = spectral_decomposition(b.psi, b.eta, b.es, b.obs);
    const double et = std::sqrt(3.0);
    REQUIRE(srb.terms.size() == 1);
    CHECK(std::abs(srb.terms[0].frequency - Complex(0.0, -2.0 * et)) < 1e-12);
}

TEST_CASE("two-qubit term lists") {
    SUBCASE("unbroken, positive exchange") {
        const auto s = two_qubits(0.0, 0.15);
        CHECK(std::abs(s.es.eigenvalues[0] - Complex(-0.8250397423133401)) < 1e-12);
        const auto sr = spectral_decomposition(s.psi, s.eta, s.es, s.obs);
        check_terms(sr, {{Complex(3.694478091079542), Complex(0.8250397423133401)}}, 1e-10);
    }
    SUBCASE("unbroken, negative exchange") {
        const auto s = two_qubits(0.0, -0.15);
        CHECK(std::abs(s.es.eigenvalues[0] - Complex(-1.0058006374913384)) < 1e-12);
        const auto sr = spectral_decomposition(s.psi, s.eta, s.es, s.obs);
        check_terms(sr, {{Complex(2.3871004912271596), Complex(1.0058006374913384)}}, 1e-10);
    }
    SUBCASE("broken ground state") {
        const auto s = two_qubits(0.0, 0.42);
        CHECK(std::abs(s.es.eigenvalues[0] - Complex(-0.586222213435947, -0.12070397912754968)) < 1e-12);
        const auto sr = spectral_decomposition(s.psi, s.eta, s.es, s.obs);
        check_terms(sr, {{Complex(7.068036258283015), Complex(0.5862222134359474, -0.1207039791275498)}}, 1e-10);
    }
    SUBCASE("biased") {
        const auto s = two_qubits(0.2, 0.1);
        CHECK(std::abs(s.es.eigenvalues[0] - Complex(-0.8858679281266462)) < 1e-12);
        const auto sr = spectral_decomposition(s.psi, s.eta, s.es, s.obs);
        check_terms(sr,
                    {{Complex(0.40539826038945687), Complex(0.0)},
                     {Complex(1.4420590216397116, 1.9661189197330549), Complex(0.8297496118648707, -0.0603043568667952)},
                     {Complex(1.442059021639714, -1.9661189197330549), Complex(0.8297496118648708, 0.06030435686679514)},
                     {Complex(0.0010990279212078117), Complex(1.883972488776846)}},
                    1e-10);
    }
}

TEST_CASE("correlation matches the closed form and the term list") {
    const auto s = single_qubit(0.5);
    const auto times = uniform_grid(0.0, 10.0, 101);
    const auto rs = correlation(s.psi, s.eta, s.es, s.obs, times);
    const auto sr = spectral_decomposition(s.psi, s.eta, s.es, s.obs);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const Complex want = single_qubit_correlation({1.0, 0.5}, times[k]);
        CHECK(std::abs(rs.c_values[k] - want) < 1e-12);
        CHECK(std::abs(rs.c_values[k] - sr.evaluate(times[k])) < 1e-14);
        CHECK(rs.chi_values[k] == doctest::Approx(2.0 * rs.c_values[k].imag()));
    }
}

TEST_CASE("correlation input validation") {
    const auto s = single_qubit(0.5);
    CHECK_THROWS_AS(correlation(s.psi, s.eta, s.es, s.obs, std::vector<double>{}), InvalidParameter);
    CHECK_THROWS_AS(correlation(s.psi, s.eta, s.es, s.obs, std::vector<double>{0.0, 1.0, 1.0}), InvalidParameter);
    const auto other = two_qubits(0.0, 0.1);
    CHECK_THROWS_AS(correlation(other.psi, s.eta, s.es, s.obs, std::vector<double>{0.0}), DimensionMismatch);
}

TEST_CASE("susceptibility spectrum agrees with a direct quadrature") {
    const auto s = single_qubit(0.5);
    const auto sr = spectral_decomposition(s.psi, s.eta, s.es, s.obs);
    const double broadening = 0.5;
    const std::vector<double> omegas{0.0, 1.0, 1.7320508075688772, 3.0};
    const auto spec = susceptibility_spectrum(sr, omegas, broadening);

    // Trapezoid rule out to t = 60, where e^{-broadening t} is below 1e-13.
    const std::size_t n = 120001;
    const auto times = uniform_grid(0.0, 60.0, n);
    const auto rs = correlation(s.psi, s.eta, s.es, s.obs, times);
    const double dt = times[1] - times[0];
    for (std::size_t w = 0; w < omegas.size(); ++w) {
        Complex sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double weight = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
            sum += weight * std::exp(kI * omegas[w] * times[k] - broadening * times[k]) * rs.chi_values[k];
        }
        sum *= dt;
        CHECK(std::abs(spec.chi_omega[w] - sum) < 1e-6);
    }
}

TEST_CASE("susceptibility spectrum rejects divergent terms") {
    const auto b = single_qubit(2.0);
    auto sr = spectral_decomposition(b.psi, b.eta, b.es, b.obs);
    // The ground-state term decays, so any positive broadening works.
    CHECK_NOTHROW(susceptibility_spectrum(sr, std::vector<double>{0.0}, 0.01));
    sr.terms.push_back({Complex(1.0), Complex(0.0, 0.5)});
    CHECK_THROWS_AS(susceptibility_spectrum(sr, std::vector<double>{0.0}, 0.1), DivergentTransform);
    CHECK_NOTHROW(susceptibility_spectrum(sr, std::vector<double>{0.0}, 0.6));
    CHECK_THROWS_AS(susceptibility_spectrum(sr, std::vector<double>{0.0}, 0.0), InvalidParameter);
}

TEST_CASE("envelope classification") {
    const auto times = uniform_grid(0.0, 40.0, 4001);
    SUBCASE("undamped") {
        const auto s = single_qubit(0.5);
        const auto env = envelope_classification(correlation(s.psi, s.eta, s.es, s.obs, times));
        CHECK(env.kind == EnvelopeKind::Undamped);
        CHECK(env.peaks >= 5);
    }
    SUBCASE("damped and amplified") {
        for (auto [g, kind] : {std::pair{0.42, EnvelopeKind::Damped}}) {
            const auto s = two_qubits(0.0, g);
            const auto env = envelope_classification(correlation(s.psi, s.eta, s.es, s.obs, times));
            CHECK(env.kind == kind);
            CHECK(env.rate == doctest::Approx(-0.1207039791275498).epsilon(1e-3));
        }
        ResponseSeries grow;
        grow.times = times;
        for (double t : times) grow.chi_values.push_back(std::exp(0.05 * t) * std::sin(3.0 * t));
        const auto env = envelope_classification(grow);
        CHECK(env.kind == EnvelopeKind::Amplified);
        CHECK(env.rate == doctest::Approx(0.05).epsilon(1e-2));
    }
    SUBCASE("zero and insufficient span") {
        ResponseSeries flat;
        flat.times = times;
        flat.chi_values.assign(times.size(), 0.0);
        CHECK(envelope_classification(flat).kind == EnvelopeKind::Zero);
        ResponseSeries short_span;
        short_span.times = uniform_grid(0.0, 2.0, 201);
        for (double t : short_span.times) short_span.chi_values.push_back(std::sin(3.0 * t));
        CHECK_THROWS_AS(envelope_classification(short_span), InsufficientSpan);
    }
}
