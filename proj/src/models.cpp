#include "pht/models.hpp"

#include <cmath>

#include <fmt/format.h>

namespace pht {

namespace {

constexpr Complex kI(0.0, 1.0);

void validate(const SingleQubitParams& p) {
    if (!(p.delta > 0.0) || !std::isfinite(p.delta)) throw InvalidParameter("single qubit: delta must be positive");
    if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) throw InvalidParameter("single qubit: gamma must be non-negative");
}

void validate(const QubitArrayParams& p) {
    if (p.m < 1) throw InvalidParameter("qubit array: m must be at least 1");
    if (p.m > kMaxQubits) {
        throw DimensionBudget(fmt::format("qubit array: 2^{} basis states exceed the budget of 2^{}", p.m, kMaxQubits));
    }
    for (double v : {p.delta, p.epsilon, p.gamma, p.g}) {
        if (!std::isfinite(v)) throw InvalidParameter("qubit array: parameters must be finite");
    }
}

// Qubit i (1-based) is bit (m - i) of the basis index; bit value 0 is spin up.
inline unsigned bit_of(std::size_t state, int qubit, int m) {
    return static_cast<unsigned>((state >> (m - qubit)) & 1U);
}

}  // namespace

ComplexMatrix single_qubit_hamiltonian(const SingleQubitParams& p) {
    validate(p);
    ComplexMatrix h(2, 2);
    h << kI * p.gamma, p.delta, p.delta, -kI * p.gamma;
    return h;
}

SingleQubitClosedForms single_qubit_closed_forms(const SingleQubitParams& p) {
    validate(p);
    const double d = p.delta;
    const double gam = p.gamma;
    if (gam == d) throw ExceptionalPoint("single_qubit_closed_forms: gamma == delta is the exceptional point");

    SingleQubitClosedForms out;
    out.broken = gam > d;
    out.right.resize(2, 2);
    out.left.resize(2, 2);
    out.matrix_elements = ComplexMatrix::Zero(2, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    if (!out.broken) {
        const double e = std::sqrt(d * d - gam * gam);
        out.energy = e;
        out.eigenvalues = {Complex(-e), Complex(e)};
        for (int k = 0; k < 2; ++k) {
            const double s = k == 0 ? -1.0 : 1.0;
            const Complex norm = s * d * d / (e * (s * e - kI * gam));
            out.right(0, k) = norm * inv_sqrt2;
            out.right(1, k) = norm * inv_sqrt2 * (s * e - kI * gam) / d;
            out.left(0, k) = inv_sqrt2;
            out.left(1, k) = inv_sqrt2 * (s * e + kI * gam) / d;
        }
        out.matrix_elements(0, 1) = d * d / (e * (e - kI * gam));
        out.matrix_elements(1, 0) = d * d / (e * (e + kI * gam));
    } else {
        const double et = std::sqrt(gam * gam - d * d);
        out.energy = et;
        out.eigenvalues = {Complex(0.0, -et), Complex(0.0, et)};
        for (int k = 0; k < 2; ++k) {
            const double s = k == 0 ? -1.0 : 1.0;
            const double norm = -d * d / (et * (et - s * gam));
            out.right(0, k) = norm * inv_sqrt2;
            out.right(1, k) = norm * inv_sqrt2 * (s * kI * et - kI * gam) / d;
            out.left(0, k) = inv_sqrt2;
            out.left(1, k) = inv_sqrt2 * (-s * kI * et + kI * gam) / d;
        }
        out.matrix_elements(0, 1) = d * d / (et * (et - gam));
        out.matrix_elements(1, 0) = d * d / (et * (et + gam));
    }

    out.eta.resize(2, 2);
    out.eta << 1.0, -kI * gam / d, kI * gam / d, 1.0;
    const double prefactor = d * d / (d * d - gam * gam);
    out.sigma_z_lifted.resize(2, 2);
    out.sigma_z_lifted << prefactor, -kI * gam / d * prefactor, -kI * gam / d * prefactor, -prefactor;
    return out;
}

double single_qubit_polarization(const SingleQubitParams& p, double t) {
    validate(p);
    const double d = p.delta;
    const double gam = p.gamma;
    if (gam < d) {
        const double e = std::sqrt(d * d - gam * gam);
        return std::cos(2.0 * e * t) + gam / e * std::sin(2.0 * e * t);
    }
    if (gam > d) {
        const double et = std::sqrt(gam * gam - d * d);
        return std::cosh(2.0 * et * t) + gam / et * std::sinh(2.0 * et * t);
    }
    // Exceptional point: limit of either branch.
    return 1.0 + 2.0 * gam * t;
}

Complex single_qubit_correlation(const SingleQubitParams& p, double t) {
    validate(p);
    const double d = p.delta;
    const double gam = p.gamma;
    if (gam == d) throw ExceptionalPoint("single_qubit_correlation: undefined at gamma == delta");
    if (gam < d) {
        const double e2 = d * d - gam * gam;
        return d * d / e2 * std::exp(-2.0 * kI * std::sqrt(e2) * t);
    }
    const double et2 = gam * gam - d * d;
    return Complex(d * d / et2 * std::exp(-2.0 * std::sqrt(et2) * t), 0.0);
}

ComplexMatrix qubit_array_hamiltonian(const QubitArrayParams& p) {
    validate(p);
    const int m = p.m;
    const std::size_t dim = std::size_t{1} << m;
    const auto n = static_cast<Eigen::Index>(dim);
    const double gain = p.gain_convention == GainConvention::Full ? p.gamma : 0.5 * p.gamma;

    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (std::size_t s = 0; s < dim; ++s) {
        const auto row = static_cast<Eigen::Index>(s);
        for (int q = 1; q <= m; ++q) {
            const double z = bit_of(s, q, m) == 0 ? 1.0 : -1.0;
            const double stagger = q % 2 == 0 ? 1.0 : -1.0;
            h(row, row) += 0.5 * p.epsilon * z + stagger * kI * gain * z;
            const auto flipped = static_cast<Eigen::Index>(s ^ (std::size_t{1} << (m - q)));
            h(flipped, row) += 0.5 * p.delta;
        }
        for (int a = 1; a <= m; ++a) {
            for (int b = a + 1; b <= m; ++b) {
                if (p.topology == Topology::NearestNeighbor && b != a + 1) continue;
                if (bit_of(s, a, m) == bit_of(s, b, m)) continue;
                const auto swapped = static_cast<Eigen::Index>(s ^ (std::size_t{1} << (m - a)) ^ (std::size_t{1} << (m - b)));
                h(swapped, row) += p.g;
            }
        }
    }
    return h;
}

SecularPolynomial secular_polynomial(const QubitArrayParams& p) {
    validate(p);
    if (p.m != 2) throw UnsupportedM(fmt::format("secular_polynomial: only m = 2 is supported, got {}", p.m));
    const double gp = p.gain_convention == GainConvention::Half ? p.gamma : 2.0 * p.gamma;
    const double d2 = p.delta * p.delta;
    const double e2 = p.epsilon * p.epsilon;
    SecularPolynomial out;
    out.coefficients = {Complex(1.0), Complex(0.0), Complex(gp * gp - d2 - p.g * p.g - e2), Complex(-p.g * d2),
                        Complex(e2 * (p.g * p.g - gp * gp))};
    return out;
}

ComplexMatrix total_polarization(int m) {
    if (m < 1) throw InvalidParameter("total_polarization: m must be at least 1");
    if (m > kMaxQubits) throw DimensionBudget(fmt::format("total_polarization: m = {} exceeds the budget", m));
    const std::size_t dim = std::size_t{1} << m;
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < dim; ++s) {
        int ups = 0;
        for (int q = 1; q <= m; ++q) ups += bit_of(s, q, m) == 0 ? 1 : 0;
        out(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = static_cast<double>(2 * ups - m);
    }
    return out;
}

bool check_pt_symmetry(const ComplexMatrix& h, int m, double tol) {
    if (m < 1 || m > kMaxQubits || h.rows() != (Eigen::Index{1} << m) || h.cols() != h.rows()) {
        throw DimensionMismatch(fmt::format("check_pt_symmetry: matrix is {}x{}, expected 2^{}", h.rows(), h.cols(), m));
    }
    const std::size_t dim = std::size_t{1} << m;
    std::vector<Eigen::Index> reversed(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t r = 0;
        for (int q = 0; q < m; ++q) r |= ((s >> q) & 1U) << (m - 1 - q);
        reversed[s] = static_cast<Eigen::Index>(r);
    }
    // (P conj(H) P^-1)_{ij} = conj(H)_{P(i), P(j)} for a permutation involution.
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const Complex transformed = std::conj(h(reversed[i], reversed[j]));
            worst = std::max(worst, std::abs(transformed - h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
    }
    return worst <= tol;
}

StateVector ground_state(const EigenSystem& es) {
    if (es.dim() == 0) throw InvalidParameter("ground_state: empty eigensystem");
    return StateVector::eigenstate(es, 0);
}

}  // namespace pht
