#include "pht/pseudo.hpp"

#include <cmath>

#include <fmt/format.h>

namespace pht {

namespace {

void require_dim(const ComplexMatrix& m, Eigen::Index n, const char* what) {
    if (m.rows() != n || m.cols() != n) {
        throw DimensionMismatch(fmt::format("{}: expected {}x{}, got {}x{}", what, n, n, m.rows(), m.cols()));
    }
}

void require_dim(const ComplexVector& v, Eigen::Index n, const char* what) {
    if (v.size() != n) throw DimensionMismatch(fmt::format("{}: expected length {}, got {}", what, n, v.size()));
}

ComplexVector phase_factors(const EigenSystem& es, double t, double sign) {
    const auto n = static_cast<Eigen::Index>(es.dim());
    ComplexVector out(n);
    const Complex i_sign_t(0.0, sign * t);
    for (Eigen::Index k = 0; k < n; ++k) out[k] = std::exp(i_sign_t * es.eigenvalues[static_cast<std::size_t>(k)]);
    return out;
}

}  // namespace

StateVector StateVector::euclidean(ComplexVector v) {
    const double nrm = v.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InvalidParameter("state vector must be nonzero and finite");
    return {v / nrm, NormConvention::Euclidean};
}

StateVector StateVector::eigenstate(const EigenSystem& es, std::size_t n) {
    if (n >= es.dim()) throw InvalidParameter(fmt::format("eigenstate index {} out of range (dim {})", n, es.dim()));
    return {es.right_vector(n), NormConvention::Biorthogonal};
}

std::size_t metric_block_count(const EigenSystem& es) {
    std::size_t count = 0;
    for (const auto& c : es.classification) {
        if (c.tag == SpectralTag::Real || c.tag == SpectralTag::PairPlus) ++count;
    }
    return count;
}

MetricOperator build_eta_scaled(const EigenSystem& es, std::span<const double> block_scales) {
    const auto n = static_cast<Eigen::Index>(es.dim());
    const auto blocks = metric_block_count(es);
    if (!block_scales.empty() && block_scales.size() != blocks) {
        throw DimensionMismatch(fmt::format("build_eta: {} block scales given, {} blocks present", block_scales.size(), blocks));
    }
    for (double s : block_scales) {
        if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParameter("build_eta: block scales must be positive and finite");
    }

    MetricOperator out;
    out.convention = block_scales.empty() ? MetricConvention::UnitLeftVectors : MetricConvention::BlockRescaled;
    out.block_scales.assign(blocks, 1.0);
    if (!block_scales.empty()) out.block_scales.assign(block_scales.begin(), block_scales.end());

    ComplexMatrix eta = ComplexMatrix::Zero(n, n);
    ComplexMatrix eta_inv = ComplexMatrix::Zero(n, n);
    std::size_t block = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& c = es.classification[static_cast<std::size_t>(k)];
        if (c.tag == SpectralTag::Unpaired) {
            throw UnpairableEigenvalue(fmt::format("build_eta: eigenvalue {} has no conjugate partner", k));
        }
        if (c.tag == SpectralTag::PairMinus) continue;
        const double s = out.block_scales[block++];
        const auto lk = es.left.col(k);
        const auto rk = es.right.col(k);
        if (c.tag == SpectralTag::Real) {
            eta.noalias() += s * lk * lk.adjoint();
            eta_inv.noalias() += (1.0 / s) * rk * rk.adjoint();
        } else {
            const auto p = static_cast<Eigen::Index>(c.partner);
            const auto lp = es.left.col(p);
            const auto rp = es.right.col(p);
            eta.noalias() += s * (lk * lp.adjoint() + lp * lk.adjoint());
            eta_inv.noalias() += (1.0 / s) * (rk * rp.adjoint() + rp * rk.adjoint());
        }
    }

    out.symmetrization_residual = max_abs(eta - eta.adjoint());
    const double scale = std::max(1.0, max_abs(eta));
    if (out.symmetrization_residual > 1e-8 * scale) {
        throw MetricAsymmetry(fmt::format("build_eta: Hermiticity residual {:.3e} too large", out.symmetrization_residual));
    }
    out.eta = 0.5 * (eta + eta.adjoint());
    out.eta_inverse = 0.5 * (eta_inv + eta_inv.adjoint());
    out.source = std::make_shared<const EigenSystem>(es);
    return out;
}

MetricOperator build_eta(const EigenSystem& es) {
    return build_eta_scaled(es, {});
}

bool check_pseudo_hermitian(const ComplexMatrix& h, const MetricOperator& eta, double tol) {
    require_dim(eta.eta, h.rows(), "check_pseudo_hermitian");
    require_square_finite(h);
    return max_abs(eta.eta * h - h.adjoint() * eta.eta) < tol;
}

Observable lift_observable(const MetricOperator& eta, const ComplexMatrix& a, std::string label, double tol) {
    require_dim(a, eta.eta.rows(), "lift_observable");
    if (!is_hermitian(a, tol * std::max(1.0, max_abs(a)))) {
        throw NotHermitian(fmt::format("lift_observable: observable '{}' is not Hermitian", label));
    }
    return {a, eta.eta_inverse * a, std::move(label)};
}

StateVector propagate_state(const EigenSystem& es, const StateVector& psi0, double t) {
    require_dim(psi0.amplitudes, static_cast<Eigen::Index>(es.dim()), "propagate_state");
    const ComplexVector coeffs = es.left.adjoint() * psi0.amplitudes;
    const ComplexVector evolved = phase_factors(es, t, -1.0).cwiseProduct(coeffs);
    return {es.right * evolved, psi0.convention};
}

ComplexMatrix heisenberg_operator(const EigenSystem& es, const ComplexMatrix& a, double t) {
    require_dim(a, static_cast<Eigen::Index>(es.dim()), "heisenberg_operator");
    const ComplexMatrix in_basis = es.left.adjoint() * a * es.right;  // <L_m|A|R_n>
    const ComplexMatrix evolved = phase_factors(es, t, 1.0).asDiagonal() * in_basis * phase_factors(es, t, -1.0).asDiagonal();
    return es.right * evolved * es.left.adjoint();
}

Complex expectation(const StateVector& psi0, const MetricOperator& eta, const EigenSystem& es, const Observable& a,
                    double t) {
    require_dim(psi0.amplitudes, eta.eta.rows(), "expectation");
    const ComplexMatrix at = heisenberg_operator(es, a.lifted_form, t);
    return psi0.amplitudes.dot(eta.eta * (at * psi0.amplitudes));
}

double generalized_norm(const StateVector& psi, const MetricOperator& eta, double tol) {
    require_dim(psi.amplitudes, eta.eta.rows(), "generalized_norm");
    const Complex v = psi.amplitudes.dot(eta.eta * psi.amplitudes);
    const double scale = std::max(1.0, max_abs(eta.eta)) * std::max(1.0, psi.amplitudes.squaredNorm());
    if (std::abs(v.imag()) > tol * scale) {
        throw NotHermitian(fmt::format("generalized_norm: imaginary part {:.3e} exceeds tolerance", v.imag()));
    }
    return v.real();
}

}  // namespace pht
