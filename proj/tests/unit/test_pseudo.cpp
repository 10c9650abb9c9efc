#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "pht/models.hpp"
#include "pht/pseudo.hpp"
#include "pht/verify/oracles.hpp"

using namespace pht;
using testing::kI;
using testing::mat2;

TEST_CASE("eta for the unbroken single qubit") {
    const auto es = eigendecompose(single_qubit_hamiltonian({1.0, 0.5}));
    const auto eta = build_eta(es);
    CHECK(max_abs(eta.eta - mat2(1.0, -0.5 * kI, 0.5 * kI, 1.0)) < 1e-12);
    CHECK(max_abs(eta.eta * eta.eta_inverse - ComplexMatrix::Identity(2, 2)) < 1e-12);
    CHECK(eta.convention == MetricConvention::UnitLeftVectors);
    CHECK(eta.symmetrization_residual < 1e-14);
    CHECK(check_pseudo_hermitian(single_qubit_hamiltonian({1.0, 0.5}), eta));
}

TEST_CASE("eta in the broken phase is indefinite") {
    const auto es = eigendecompose(single_qubit_hamiltonian({1.0, 2.0}));
    const auto eta = build_eta(es);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(eta.eta);
    CHECK(solver.eigenvalues()[0] < 0.0);
    CHECK(solver.eigenvalues()[1] > 0.0);
    // The broken-phase eigenstates have vanishing eta-norm.
    for (std::size_t n = 0; n < 2; ++n) {
        const auto r = es.right_vector(n);
        CHECK(std::abs(r.dot(eta.eta * r)) < 1e-12);
    }
}

TEST_CASE("wrong metric fails the pseudo-Hermiticity check") {
    const auto h = single_qubit_hamiltonian({1.0, 0.5});
    auto eta = build_eta(eigendecompose(h));
    eta.eta = ComplexMatrix::Identity(2, 2);
    CHECK_FALSE(check_pseudo_hermitian(h, eta));
}

TEST_CASE("block rescaling") {
    std::mt19937_64 rng(5);
    const auto h = testing::random_pseudo_hermitian(rng, 5, 1);
    const auto es = eigendecompose(h);
    CHECK(metric_block_count(es) == 4);
    const std::vector<double> scales{0.5, 2.0, 3.0, 0.25};
    const auto eta = build_eta_scaled(es, scales);
    CHECK(eta.convention == MetricConvention::BlockRescaled);
    CHECK(check_pseudo_hermitian(h, eta));
    CHECK(max_abs(eta.eta * eta.eta_inverse - ComplexMatrix::Identity(5, 5)) < 1e-9);
    CHECK_THROWS_AS(build_eta_scaled(es, std::vector<double>{1.0, 1.0}), DimensionMismatch);
    CHECK_THROWS_AS(build_eta_scaled(es, std::vector<double>{1.0, -1.0, 1.0, 1.0}), InvalidParameter);
}

TEST_CASE("build_eta needs a conjugation-closed spectrum") {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h.diagonal() << Complex(0.0, 1.0), Complex(1.0, 0.0);
    CHECK_THROWS_AS(build_eta(eigendecompose(h)), UnpairableEigenvalue);
}

TEST_CASE("lift_observable") {
    const auto eta = build_eta(eigendecompose(single_qubit_hamiltonian({1.0, 0.5})));
    const auto obs = lift_observable(eta, testing::sigma_z(), "sz");
    CHECK(obs.label == "sz");
    CHECK(max_abs(obs.lifted_form - (4.0 / 3.0) * mat2(1.0, -0.5 * kI, -0.5 * kI, -1.0)) < 1e-12);
    CHECK_THROWS_AS(lift_observable(eta, mat2(0.0, 1.0, 0.0, 0.0)), NotHermitian);
    CHECK_THROWS_AS(lift_observable(eta, ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("state constructors") {
    ComplexVector v(2);
    v << 3.0, 4.0 * kI;
    const auto s = StateVector::euclidean(v);
    CHECK(s.amplitudes.norm() == doctest::Approx(1.0));
    CHECK(s.convention == NormConvention::Euclidean);
    CHECK_THROWS_AS(StateVector::euclidean(ComplexVector::Zero(2)), InvalidParameter);

    const auto es = eigendecompose(single_qubit_hamiltonian({1.0, 0.5}));
    const auto e = StateVector::eigenstate(es, 1);
    CHECK(e.convention == NormConvention::Biorthogonal);
    CHECK(std::abs(es.left_vector(1).dot(e.amplitudes) - 1.0) < 1e-14);
    CHECK_THROWS_AS(StateVector::eigenstate(es, 2), InvalidParameter);
}

TEST_CASE("propagation agrees with the matrix exponential") {
    std::mt19937_64 rng(9);
    for (int pairs : {0, 1, 2}) {
        const auto h = testing::random_pseudo_hermitian(rng, 4, pairs);
        const auto es = eigendecompose(h);
        const auto psi = StateVector::euclidean(testing::random_vector(rng, 4));
        for (double t : {0.0, 0.5, 2.5}) {
            const auto got = propagate_state(es, psi, t).amplitudes;
            const auto want = oracle::exponential_propagate(h, psi.amplitudes, t);
            CHECK((got - want).norm() / std::max(1.0, want.norm()) < 1e-12);
        }
    }
}

TEST_CASE("Heisenberg operator satisfies e^{iHt} A e^{-iHt}") {
    std::mt19937_64 rng(10);
    const auto h = testing::random_pseudo_hermitian(rng, 3, 1);
    const auto es = eigendecompose(h);
    ComplexMatrix a = ComplexMatrix::Random(3, 3);
    const double t = 0.7;
    const ComplexMatrix u = ((-kI * t) * h).exp();
    const ComplexMatrix u_inv = ((kI * t) * h).exp();
    CHECK(max_abs(heisenberg_operator(es, a, t) - u_inv * a * u) < 1e-11);
}

TEST_CASE("generalized norm is conserved for a real spectrum") {
    std::mt19937_64 rng(12);
    const auto h = testing::random_pseudo_hermitian(rng, 4, 0);
    const auto es = eigendecompose(h);
    const auto eta = build_eta(es);
    const auto psi = StateVector::euclidean(testing::random_vector(rng, 4));
    const double n0 = generalized_norm(psi, eta);
    CHECK(n0 > 0.0);
    for (double t = 0.0; t <= 50.0; t += 2.5) {
        CHECK(generalized_norm(propagate_state(es, psi, t), eta) == doctest::Approx(n0).epsilon(1e-10));
    }
}

TEST_CASE("expectation values do not depend on the metric gauge") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.2, 5.0);
    for (int pairs : {0, 1, 2}) {
        const auto h = testing::random_pseudo_hermitian(rng, 5, pairs);
        const auto es = eigendecompose(h);
        const auto eta = build_eta(es);
        std::vector<double> scales(metric_block_count(es));
        for (auto& s : scales) s = u(rng);
        const auto eta2 = build_eta_scaled(es, scales);
        ComplexMatrix a = ComplexMatrix::Random(5, 5);
        a = (a + a.adjoint()).eval();
        const auto psi = StateVector::euclidean(testing::random_vector(rng, 5));
        for (double t : {0.0, 1.0, 3.0}) {
            const Complex e1 = expectation(psi, eta, es, lift_observable(eta, a), t);
            const Complex e2 = expectation(psi, eta2, es, lift_observable(eta2, a), t);
            CHECK(std::abs(e1 - e2) / std::max(1.0, std::abs(e1)) < 1e-10);
        }
    }
}

TEST_CASE("polarization from spin up follows the closed forms") {
    ComplexVector up(2);
    up << 1.0, 0.0;
    const auto psi = StateVector::euclidean(up);
    for (double gamma : {0.25, 0.75, 1.5}) {
        const auto es = eigendecompose(single_qubit_hamiltonian({1.0, gamma}));
        const auto eta = build_eta(es);
        const auto obs = lift_observable(eta, testing::sigma_z());
        for (double t : {0.0, 0.4, 3.0}) {
            const double want = single_qubit_polarization({1.0, gamma}, t);
            CHECK(std::abs(expectation(psi, eta, es, obs, t) - want) / std::max(1.0, std::abs(want)) < 1e-12);
        }
    }
}
