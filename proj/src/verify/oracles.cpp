#include "pht/verify/oracles.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace pht::oracle {

namespace {

constexpr Complex kI(0.0, 1.0);

ComplexMatrix minor_without(const ComplexMatrix& m, Eigen::Index col) {
    const auto n = m.rows();
    ComplexMatrix out(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
        Eigen::Index c_out = 0;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (c == col) continue;
            out(r - 1, c_out++) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix embed(const ComplexMatrix& op, int site, int m) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = 1; q <= m; ++q) {
        const ComplexMatrix factor = q == site ? op : ComplexMatrix::Identity(2, 2);
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

}  // namespace

Complex cofactor_determinant(const ComplexMatrix& m) {
    const auto n = m.rows();
    if (n == 0 || m.cols() != n) throw DimensionMismatch("cofactor_determinant: square input required");
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Complex sum = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        if (m(0, c) == Complex(0.0)) continue;
        const double sign = c % 2 == 0 ? 1.0 : -1.0;
        sum += sign * m(0, c) * cofactor_determinant(minor_without(m, c));
    }
    return sum;
}

std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m) {
    const auto n = m.rows();
    if (n == 0 || m.cols() != n) throw DimensionMismatch("characteristic_polynomial: square input required");
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1.0;
    ComplexMatrix mk = ComplexMatrix::Zero(n, n);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        mk = m * mk + c[static_cast<std::size_t>(k - 1)] * id;
        c[static_cast<std::size_t>(k)] = -(m * mk).trace() / static_cast<double>(k);
    }
    return c;
}

double cubic_discriminant(double p, double q) { return -4.0 * p * p * p - 27.0 * q * q; }

double array_discriminant_root(double delta, double gamma, double lo, double hi) {
    auto d = [&](double g) {
        const double p = 4.0 * gamma * gamma - delta * delta - g * g;
        const double q = -g * delta * delta;
        return cubic_discriminant(p, q);
    };
    double dlo = d(lo);
    if (dlo * d(hi) > 0.0) throw InvalidParameter("array_discriminant_root: bracket has no sign change");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = d(mid);
        if ((dm > 0.0) == (dlo > 0.0)) {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ComplexMatrix kronecker_array_hamiltonian(const QubitArrayParams& p) {
    if (p.m < 1 || p.m > 8) throw InvalidParameter("kronecker_array_hamiltonian: 1 <= m <= 8");
    ComplexMatrix sx(2, 2), sz(2, 2), sp(2, 2), sm(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    sp << 0, 1, 0, 0;  // |up><down| with up as the first basis state
    sm << 0, 0, 1, 0;
    const double gain = p.gain_convention == GainConvention::Full ? p.gamma : 0.5 * p.gamma;
    const auto dim = Eigen::Index{1} << p.m;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (int i = 1; i <= p.m; ++i) {
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        h += embed(0.5 * p.delta * sx + (0.5 * p.epsilon + sign * kI * gain) * sz, i, p.m);
    }
    for (int i = 1; i <= p.m; ++i) {
        for (int j = i + 1; j <= p.m; ++j) {
            if (p.topology == Topology::NearestNeighbor && j != i + 1) continue;
            h += p.g * (embed(sp, i, p.m) * embed(sm, j, p.m) + embed(sm, i, p.m) * embed(sp, j, p.m));
        }
    }
    return h;
}

ComplexVector exponential_propagate(const ComplexMatrix& h, const ComplexVector& psi, double t) {
    const ComplexMatrix generator = (-kI * t) * h;
    const ComplexMatrix u = generator.exp();
    return u * psi;
}

std::vector<Complex> hermitian_correlation(const ComplexMatrix& h, const ComplexMatrix& a, const ComplexVector& psi,
                                           const std::vector<double>& times) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    const Eigen::VectorXd& e = solver.eigenvalues();
    const ComplexMatrix& v = solver.eigenvectors();
    const ComplexMatrix a_eig = v.adjoint() * a * v;
    const ComplexVector ket = v.adjoint() * (a * psi);
    const ComplexVector bra = v.adjoint() * psi;
    std::vector<Complex> out;
    out.reserve(times.size());
    for (double t : times) {
        ComplexVector phase_ket(e.size());
        ComplexVector phase_bra(e.size());
        for (Eigen::Index k = 0; k < e.size(); ++k) {
            phase_ket[k] = std::exp(-kI * e[k] * t) * ket[k];
            phase_bra[k] = std::exp(-kI * e[k] * t) * bra[k];
        }
        out.push_back(phase_bra.dot(a_eig * phase_ket));
    }
    return out;
}

}  // namespace pht::oracle
