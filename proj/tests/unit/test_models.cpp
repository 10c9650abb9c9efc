#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pht/models.hpp"
#include "pht/verify/oracles.hpp"

using namespace pht;
using testing::kI;

namespace {

QubitArrayParams two_qubits(double eps, double gamma, double g, GainConvention gc) {
    QubitArrayParams p;
    p.epsilon = eps;
    p.gamma = gamma;
    p.g = g;
    p.gain_convention = gc;
    return p;
}

}  // namespace

TEST_CASE("single-qubit Hamiltonian") {
    const auto h = single_qubit_hamiltonian({1.0, 0.5});
    CHECK(max_abs(h - testing::mat2(0.5 * kI, 1.0, 1.0, -0.5 * kI)) == 0.0);
    CHECK_THROWS_AS(single_qubit_hamiltonian({0.0, 0.5}), InvalidParameter);
    CHECK_THROWS_AS(single_qubit_hamiltonian({1.0, -0.1}), InvalidParameter);
}

TEST_CASE("single-qubit closed forms") {
    const auto u = single_qubit_closed_forms({1.0, 0.5});
    CHECK_FALSE(u.broken);
    CHECK(u.energy == doctest::Approx(0.8660254037844386));
    CHECK(std::abs(u.matrix_elements(0, 1) - 1.1547005383792515 * std::exp(kI * 0.5235987755982988)) < 1e-12);
    CHECK(std::abs(u.matrix_elements(0, 0)) == 0.0);
    // The closed-form eigenvectors are bi-orthonormal eigenvectors of H.
    const auto h = single_qubit_hamiltonian({1.0, 0.5});
    for (int k = 0; k < 2; ++k) {
        CHECK((h * u.right.col(k) - u.eigenvalues[k] * u.right.col(k)).norm() < 1e-12);
        CHECK((h.adjoint() * u.left.col(k) - std::conj(u.eigenvalues[k]) * u.left.col(k)).norm() < 1e-12);
    }
    CHECK(max_abs(u.left.adjoint() * u.right - ComplexMatrix::Identity(2, 2)) < 1e-12);

    const auto b = single_qubit_closed_forms({1.0, 2.0});
    CHECK(b.broken);
    CHECK(b.energy == doctest::Approx(1.7320508075688772));
    CHECK(b.matrix_elements(0, 1).real() == doctest::Approx(-2.1547005383792515));
    CHECK(b.matrix_elements(1, 0).real() == doctest::Approx(0.1547005383792515));
    CHECK_THROWS_AS(single_qubit_closed_forms({1.0, 1.0}), ExceptionalPoint);
}

TEST_CASE("single-qubit reference curves") {
    CHECK(single_qubit_polarization({1.0, 0.5}, 0.0) == doctest::Approx(1.0));
    CHECK(single_qubit_polarization({1.0, 2.0}, 0.0) == doctest::Approx(1.0));
    // Both branches approach 1 + 2 gamma t at the exceptional point.
    const double t = 0.3;
    CHECK(single_qubit_polarization({1.0, 1.0 - 1e-7}, t) == doctest::Approx(single_qubit_polarization({1.0, 1.0}, t)).epsilon(1e-6));
    CHECK(single_qubit_polarization({1.0, 1.0 + 1e-7}, t) == doctest::Approx(1.6).epsilon(1e-6));
    CHECK(std::abs(single_qubit_correlation({1.0, 0.5}, 0.0) - 4.0 / 3.0) < 1e-14);
    CHECK(std::abs(single_qubit_correlation({1.0, 0.0}, 1.0) - std::exp(-2.0 * kI)) < 1e-14);
    CHECK_THROWS_AS(single_qubit_correlation({1.0, 1.0}, 0.0), ExceptionalPoint);
}

TEST_CASE("two-qubit Hamiltonian structure") {
    const auto h = qubit_array_hamiltonian(two_qubits(0.0, 0.2, 0.1, GainConvention::Full));
    REQUIRE(h.rows() == 4);
    CHECK(std::abs(h(0, 0)) < 1e-15);
    CHECK(std::abs(h(1, 1) - Complex(0.0, -0.4)) < 1e-15);
    CHECK(std::abs(h(2, 2) - Complex(0.0, 0.4)) < 1e-15);
    CHECK(std::abs(h(3, 3)) < 1e-15);
    CHECK(h(0, 1) == Complex(0.5));
    CHECK(h(0, 2) == Complex(0.5));
    CHECK(h(1, 3) == Complex(0.5));
    CHECK(h(1, 2) == Complex(0.1));
    CHECK(h(2, 1) == Complex(0.1));
    CHECK(h(0, 3) == Complex(0.0));

    const auto half = qubit_array_hamiltonian(two_qubits(0.0, 0.2, 0.1, GainConvention::Half));
    CHECK(std::abs(half(1, 1) - Complex(0.0, -0.2)) < 1e-15);
}

TEST_CASE("biased determinant") {
    const auto h = qubit_array_hamiltonian(two_qubits(0.2, 0.2, 0.1, GainConvention::Half));
    const Complex want = 0.2 * 0.2 * (0.1 * 0.1 - 0.2 * 0.2);
    CHECK(std::abs(oracle::cofactor_determinant(h) - want) < 1e-15);
    CHECK(std::abs(h.determinant() - want) < 1e-15);
}

TEST_CASE("one qubit in the array reduces to the single-qubit model") {
    QubitArrayParams p;
    p.m = 1;
    p.delta = 2.0;
    p.gamma = 0.3;
    const auto h = qubit_array_hamiltonian(p);
    // Qubit 1 carries the (-1)^1 staggering sign.
    CHECK(max_abs(h - single_qubit_hamiltonian({1.0, 0.3}).conjugate()) < 1e-15);
}

TEST_CASE("builder matches Kronecker assembly for several sizes") {
    for (int m = 1; m <= 5; ++m) {
        for (auto topo : {Topology::NearestNeighbor, Topology::AllPairs}) {
            QubitArrayParams p;
            p.m = m;
            p.delta = 0.9;
            p.epsilon = 0.3;
            p.gamma = 0.25;
            p.g = -0.4;
            p.topology = topo;
            CHECK(max_abs(qubit_array_hamiltonian(p) - oracle::kronecker_array_hamiltonian(p)) < 1e-15);
        }
    }
}

TEST_CASE("secular polynomial matches the characteristic polynomial") {
    for (auto gc : {GainConvention::Half, GainConvention::Full}) {
        for (double eps : {0.0, 0.2, 0.35}) {
            const auto p = two_qubits(eps, 0.3, -0.25, gc);
            const auto poly = oracle::characteristic_polynomial(qubit_array_hamiltonian(p));
            const auto sec = secular_polynomial(p).coefficients;
            for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(poly[k] - sec[k]) < 1e-14);
        }
    }
    auto p = two_qubits(0.0, 0.1, 0.1, GainConvention::Half);
    p.m = 3;
    CHECK_THROWS_AS(secular_polynomial(p), UnsupportedM);
}

TEST_CASE("array validation") {
    QubitArrayParams p;
    p.m = kMaxQubits + 1;
    CHECK_THROWS_AS(qubit_array_hamiltonian(p), DimensionBudget);
    p.m = 0;
    CHECK_THROWS_AS(qubit_array_hamiltonian(p), InvalidParameter);
    p.m = 2;
    p.g = std::nan("");
    CHECK_THROWS_AS(qubit_array_hamiltonian(p), InvalidParameter);
}

TEST_CASE("total polarization") {
    const auto z = total_polarization(2);
    CHECK(z.diagonal().real().transpose() == Eigen::RowVector4d(2, 0, 0, -2));
    CHECK(total_polarization(1)(0, 0) == Complex(1.0));
}

TEST_CASE("PT symmetry of staggered builds") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int m : {2, 4, 6, 8}) {
        QubitArrayParams p;
        p.m = m;
        p.gamma = std::abs(u(rng));
        p.g = u(rng);
        CHECK(check_pt_symmetry(qubit_array_hamiltonian(p), m));
    }
    // A uniform bias commutes with qubit reversal and keeps the symmetry.
    QubitArrayParams biased;
    biased.epsilon = 0.2;
    biased.gamma = 0.2;
    CHECK(check_pt_symmetry(qubit_array_hamiltonian(biased), 2));
    // Odd M is not PT symmetric with alternating gain.
    QubitArrayParams odd;
    odd.m = 3;
    odd.gamma = 0.2;
    CHECK_FALSE(check_pt_symmetry(qubit_array_hamiltonian(odd), 3));
    CHECK_THROWS_AS(check_pt_symmetry(ComplexMatrix::Identity(3, 3), 2), DimensionMismatch);
}
