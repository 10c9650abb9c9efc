#include "pht/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace pht {

void require_square_finite(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw DimensionMismatch(fmt::format("expected a non-empty square matrix, got {}x{}", m.rows(), m.cols()));
    }
    if (!m.allFinite()) {
        throw NonFinite("matrix contains NaN or Inf entries");
    }
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol;
}

namespace {

// Ascending real part; real parts within `tie` of each other count as equal and
// are ordered by ascending imaginary part.
std::vector<std::size_t> spectral_order(const std::vector<Complex>& ev, double tie) {
    std::vector<std::size_t> idx(ev.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return ev[a].real() < ev[b].real(); });
    std::size_t start = 0;
    while (start < idx.size()) {
        std::size_t stop = start + 1;
        while (stop < idx.size() && ev[idx[stop]].real() - ev[idx[stop - 1]].real() <= tie) ++stop;
        std::stable_sort(idx.begin() + static_cast<std::ptrdiff_t>(start), idx.begin() + static_cast<std::ptrdiff_t>(stop),
                         [&](auto a, auto b) { return ev[a].imag() < ev[b].imag(); });
        start = stop;
    }
    return idx;
}

// Replaces the columns of `v` belonging to each cluster of (numerically) equal
// eigenvalues by an orthonormal basis of the null space of H - lambda I. The
// Schur back-substitution returns nearly parallel vectors for repeated
// eigenvalues even when the eigenspace is complete; a cluster whose null space
// is smaller than its multiplicity is a Jordan block.
void resolve_degenerate_clusters(const ComplexMatrix& h, const std::vector<Complex>& ev, ComplexMatrix& v,
                                 double cluster_tol, double null_tol) {
    const auto n = ev.size();
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        std::vector<std::size_t> block{i};
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!done[j] && std::abs(ev[j] - ev[i]) <= cluster_tol) block.push_back(j);
        }
        for (auto k : block) done[k] = true;
        if (block.size() < 2) continue;

        Complex lambda = 0.0;
        for (auto k : block) lambda += ev[k];
        lambda /= static_cast<double>(block.size());
        const auto dim = h.rows();
        const ComplexMatrix shifted = h - lambda * ComplexMatrix::Identity(dim, dim);
        Eigen::BDCSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();  // descending
        const auto mult = static_cast<Eigen::Index>(block.size());
        const double largest = std::max(1.0, sv[0]);
        if (!(sv[dim - mult] <= null_tol * largest)) {
            throw DefectiveMatrix(fmt::format(
                "eigendecompose: eigenvalue ({:.12g}, {:.12g}) has multiplicity {} but a smaller eigenspace; matrix is defective",
                lambda.real(), lambda.imag(), mult));
        }
        for (Eigen::Index a = 0; a < mult; ++a) {
            v.col(static_cast<Eigen::Index>(block[static_cast<std::size_t>(a)])) = svd.matrixV().col(dim - mult + a);
        }
    }
}

Eigen::Index first_significant(const ComplexVector& v) {
    const double cutoff = 1e-12 * v.norm();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v[k]) > cutoff) return k;
    }
    return 0;
}

}  // namespace

EigenSystem eigendecompose(const ComplexMatrix& h, double tol) {
    require_square_finite(h);
    if (!(tol > 0.0)) throw InvalidParameter("eigendecompose: tol must be positive");
    const auto n = h.rows();

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(h, true);
    if (solver.info() != Eigen::Success) throw NoConvergence("eigendecompose: Schur iteration did not converge");

    std::vector<Complex> raw(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    double scale = 1.0;
    for (const auto& e : raw) scale = std::max(scale, std::abs(e));

    const auto order = spectral_order(raw, tol * scale);
    EigenSystem es;
    es.tolerance_used = tol;
    es.eigenvalues.resize(static_cast<std::size_t>(n));
    ComplexMatrix v(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        es.eigenvalues[static_cast<std::size_t>(k)] = raw[src];
        v.col(k) = solver.eigenvectors().col(static_cast<Eigen::Index>(src)).normalized();
    }
    resolve_degenerate_clusters(h, es.eigenvalues, v, tol * scale, std::sqrt(tol));

    Eigen::FullPivLU<ComplexMatrix> lu(v);
    if (!lu.isInvertible()) {
        throw DefectiveMatrix("eigendecompose: eigenvectors are linearly dependent (exceptional point)");
    }
    // Rows of V^-1 are the dual (left) vectors; with unit right vectors their
    // norm is the eigenvalue condition number 1/|<L^|R^>|.
    ComplexMatrix left = lu.inverse().adjoint();
    const double min_overlap = std::sqrt(tol);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double overlap = 1.0 / left.col(k).norm();
        if (!(overlap >= min_overlap)) {
            throw DefectiveMatrix(fmt::format(
                "eigendecompose: |<L|R>| = {:.3e} below {:.1e} for eigenvalue ({:.12g}, {:.12g}); matrix is defective",
                overlap, min_overlap, es.eigenvalues[static_cast<std::size_t>(k)].real(),
                es.eigenvalues[static_cast<std::size_t>(k)].imag()));
        }
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        ComplexVector l = left.col(k);
        const Complex lead = l[first_significant(l)];
        const Complex phase = lead / std::abs(lead);
        l /= l.norm() * phase;
        ComplexVector r = v.col(k);
        r /= l.dot(r);  // Eigen's dot conjugates the first argument: <l|r>
        left.col(k) = l;
        v.col(k) = r;
    }
    es.left = std::move(left);
    es.right = std::move(v);
    es.classification = pair_conjugates(es.eigenvalues, tol);
    return es;
}

std::vector<SpectralEntry> pair_conjugates(std::span<const Complex> ev, double tol) {
    const auto n = ev.size();
    std::vector<SpectralEntry> tags(n);
    std::vector<bool> assigned(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (assigned[i] || std::abs(ev[i].imag()) <= tol) continue;
        const Complex target = std::conj(ev[i]);
        std::size_t best = n;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || assigned[j]) continue;
            const double d = std::abs(ev[j] - target);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        const double scale = std::max(1.0, std::abs(ev[i]));
        if (best == n || best_dist > tol * scale) {
            tags[i] = {SpectralTag::Unpaired, i};
            assigned[i] = true;
            continue;
        }
        const bool i_plus = ev[i].imag() > ev[best].imag();
        tags[i] = {i_plus ? SpectralTag::PairPlus : SpectralTag::PairMinus, best};
        tags[best] = {i_plus ? SpectralTag::PairMinus : SpectralTag::PairPlus, i};
        assigned[i] = assigned[best] = true;
    }
    return tags;
}

SpectralClassification classify_spectrum(const EigenSystem& es, double tol) {
    const auto tags = pair_conjugates(es.eigenvalues, tol);
    SpectralClassification out;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        switch (tags[i].tag) {
        case SpectralTag::Real: ++out.n_real; break;
        case SpectralTag::PairPlus: ++out.n_pairs; break;
        case SpectralTag::PairMinus: break;
        case SpectralTag::Unpaired:
            throw UnpairableEigenvalue(fmt::format(
                "eigenvalue ({:.12g}, {:.12g}) has no complex-conjugate partner within {:.1e}",
                es.eigenvalues[i].real(), es.eigenvalues[i].imag(), tol));
        }
    }
    out.is_fully_real = out.n_pairs == 0;
    return out;
}

namespace {

Complex horner(std::span<const Complex> c, Complex x) {
    Complex acc = 0.0;
    for (const auto& a : c) acc = acc * x + a;
    return acc;
}

// p(x) and p'(x) in one pass.
std::pair<Complex, Complex> horner_with_derivative(std::span<const Complex> c, Complex x) {
    Complex p = 0.0;
    Complex dp = 0.0;
    for (const auto& a : c) {
        dp = dp * x + p;
        p = p * x + a;
    }
    return {p, dp};
}

std::vector<Complex> aberth(std::span<const Complex> monic) {
    const auto deg = monic.size() - 1;
    // Fujiwara bound on root magnitudes.
    double radius = 0.0;
    for (std::size_t k = 1; k <= deg; ++k) {
        double term = std::pow(std::abs(monic[k]), 1.0 / static_cast<double>(k));
        if (k == deg) term = std::pow(std::abs(monic[k]) / 2.0, 1.0 / static_cast<double>(k));
        radius = std::max(radius, term);
    }
    radius = std::max(2.0 * radius, 1e-3);

    std::vector<Complex> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
        z[k] = std::polar(radius * 0.5, angle);
    }

    constexpr int kMaxIter = 1000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double worst = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            const auto [p, dp] = horner_with_derivative(monic, z[k]);
            if (p == Complex(0.0)) continue;
            const Complex ratio = p / dp;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < deg; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (worst < 1e-16) break;
    }
    return z;
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, double tol) {
    if (coeffs.empty() || coeffs.front() == Complex(0.0)) {
        throw InvalidParameter("polynomial_roots: leading coefficient must be nonzero");
    }
    if (coeffs.size() > 9) throw InvalidParameter("polynomial_roots: degree above 8 is not supported");
    for (const auto& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NonFinite("polynomial_roots: non-finite coefficient");
    }

    std::vector<Complex> roots;
    std::size_t end = coeffs.size();
    while (end > 1 && coeffs[end - 1] == Complex(0.0)) {
        roots.emplace_back(0.0);
        --end;
    }
    std::vector<Complex> monic(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(end));
    const Complex lead = monic.front();
    for (auto& c : monic) c /= lead;

    const auto deg = monic.size() - 1;
    if (deg == 1) {
        roots.push_back(-monic[1]);
    } else if (deg == 2) {
        const Complex b = monic[1];
        const Complex c = monic[2];
        const Complex disc = std::sqrt(b * b - 4.0 * c);
        // Pick the sign that avoids cancellation.
        const Complex q = -0.5 * (std::real(std::conj(b) * disc) >= 0.0 ? b + disc : b - disc);
        if (q == Complex(0.0)) {
            roots.emplace_back(0.0);
            roots.emplace_back(0.0);
        } else {
            roots.push_back(q);
            roots.push_back(c / q);
        }
    } else if (deg > 2) {
        for (auto r : aberth(monic)) roots.push_back(r);
    }

    // Newton polish on the full polynomial.
    for (auto& r : roots) {
        for (int k = 0; k < 3; ++k) {
            const auto [p, dp] = horner_with_derivative(coeffs, r);
            if (dp == Complex(0.0)) break;
            const Complex next = r - p / dp;
            if (std::abs(horner(coeffs, next)) < std::abs(p)) r = next; else break;
        }
    }

    // Backward error: the residual relative to sum_k |c_k| |r|^k.
    for (const auto& r : roots) {
        double scale = 0.0;
        for (const auto& c : coeffs) scale = scale * std::abs(r) + std::abs(c);
        const double residual = std::abs(horner(coeffs, r));
        if (!(residual <= tol * scale)) {
            throw NoConvergence(fmt::format("polynomial_roots: residual {:.3e} at root ({:.12g}, {:.12g}) exceeds {:.1e}",
                                            residual, r.real(), r.imag(), tol * scale));
        }
    }
    return roots;
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw DimensionMismatch("multiset_distance: sizes differ");
    const auto n = a.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do {
            double worst = 0.0;
            for (std::size_t i = 0; i < n && worst < best; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
            best = std::min(best, worst);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    std::vector<bool> used(n, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pick = n;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (!used[j] && std::abs(a[i] - b[j]) < d) {
                d = std::abs(a[i] - b[j]);
                pick = j;
            }
        }
        used[pick] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

double biorthonormality_error(const EigenSystem& es) {
    const auto n = static_cast<Eigen::Index>(es.dim());
    return max_abs(es.left.adjoint() * es.right - ComplexMatrix::Identity(n, n));
}

double completeness_error(const EigenSystem& es) {
    const auto n = static_cast<Eigen::Index>(es.dim());
    return max_abs(es.right * es.left.adjoint() - ComplexMatrix::Identity(n, n));
}

double reconstruction_error(const EigenSystem& es, const ComplexMatrix& h) {
    const auto n = static_cast<Eigen::Index>(es.dim());
    ComplexVector d(n);
    for (Eigen::Index k = 0; k < n; ++k) d[k] = es.eigenvalues[static_cast<std::size_t>(k)];
    return max_abs(h - es.right * d.asDiagonal() * es.left.adjoint());
}

}  // namespace pht
