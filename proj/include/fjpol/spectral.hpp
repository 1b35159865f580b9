#ifndef FJPOL_SPECTRAL_HPP
#define FJPOL_SPECTRAL_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "fjpol/errors.hpp"
#include "fjpol/linalg.hpp"
#include "fjpol/models.hpp"

namespace fjpol {

// Strictly-greater-than-one classification band for singular values.
constexpr double kSigmaOneTol = 1e-9;

// Orthonormal eigenbasis of H^T H with σ_i = sqrt(eigenvalue_i), descending.
// Sign convention: each column's largest-magnitude entry is positive; the
// leading column is additionally flipped to be entrywise nonnegative
// (Perron direction).
struct SpectralBasis {
    Vec sigmas;   // descending
    Mat b;        // columns are the eigenvectors v_i

    std::size_t size() const { return sigmas.size(); }

    Vec vector(std::size_t i) const { return b.col(i); }

    // count of σ_i > 1 (strict band)
    std::size_t count_above_one() const {
        std::size_t l = 0;
        while (l < sigmas.size() && sigmas[l] > 1.0 + kSigmaOneTol) ++l;
        return l;
    }

    // indices with |σ_i - 1| <= band
    std::vector<std::size_t> indices_equal_one() const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < sigmas.size(); ++i)
            if (std::abs(sigmas[i] - 1.0) <= kSigmaOneTol) idx.push_back(i);
        return idx;
    }

    // coordinates of s in this basis, α = B^T s
    Vec coefficients(const Vec& s) const { return transpose_times(b, s); }

    Vec reconstruct(const Vec& alpha) const { return b * alpha; }
};

struct CoefficientVector {
    Vec alpha;
};

inline SpectralBasis spectral_basis(const ResponseMatrix& h, double tol = 1e-12) {
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(h.h(i, j)))
                throw NumericalError("response matrix has non-finite entries");
    const Mat hth = gram(h.h);
    EighResult eig = jacobi_eigh(hth, tol);

    SpectralBasis basis;
    basis.sigmas.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        basis.sigmas[i] = std::sqrt(std::max(0.0, eig.eigenvalues[i]));
    basis.b = std::move(eig.vectors);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = std::abs(basis.b(i, k));
            if (v > best) { best = v; arg = i; }
        }
        if (basis.b(arg, k) < 0.0)
            for (std::size_t i = 0; i < n; ++i) basis.b(i, k) = -basis.b(i, k);
    }
    // Perron direction for the leading vector
    double s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) s1 += basis.b(i, 0);
    if (s1 < 0.0)
        for (std::size_t i = 0; i < n; ++i) basis.b(i, 0) = -basis.b(i, 0);

    // residual check: H^T H v_i = σ_i^2 v_i
    for (std::size_t k = 0; k < n; ++k) {
        Vec v = basis.vector(k);
        Vec r = hth * v;
        const double lam = basis.sigmas[k] * basis.sigmas[k];
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(r[i] - lam * v[i]));
        if (res > 1e-8 * std::max(1.0, lam))
            throw NumericalError("eigenpair residual " + std::to_string(res) +
                                 " exceeds tolerance");
    }
    return basis;
}

} // namespace fjpol

#endif // FJPOL_SPECTRAL_HPP
