#ifndef FJPOL_LINALG_HPP
#define FJPOL_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "fjpol/errors.hpp"

namespace fjpol {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything in this project is small enough
// (n up to a few thousand) that dense storage is the simplest honest choice.
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double* row(std::size_t i) { return a_.data() + i * cols_; }
    const double* row(std::size_t i) const { return a_.data() + i * cols_; }

    Vec col(std::size_t j) const {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool operator==(const Mat&) const = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec a_;
};

inline Vec operator*(const Mat& m, const Vec& x) {
    if (m.cols() != x.size()) throw ValidationError("matrix-vector dimension mismatch");
    Vec y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* r = m.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

// C = A^T A, exploiting symmetry of the result.
inline Mat gram(const Mat& a) {
    const std::size_t n = a.cols();
    Mat c(n, n);
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* r = a.row(k);
        for (std::size_t i = 0; i < n; ++i) {
            const double rik = r[i];
            if (rik == 0.0) continue;
            for (std::size_t j = i; j < n; ++j) c(i, j) += rik * r[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) c(i, j) = c(j, i);
    return c;
}

inline Vec transpose_times(const Mat& m, const Vec& x) {
    if (m.rows() != x.size()) throw ValidationError("matrix-vector dimension mismatch");
    Vec y(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* r = m.row(i);
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += r[j] * xi;
    }
    return y;
}

inline double dot(const Vec& a, const Vec& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm1(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s;
}

inline double norm_inf(const Vec& a) {
    double s = 0.0;
    for (double v : a) s = std::max(s, std::abs(v));
    return s;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

// LU factorization with partial pivoting, in place. Returns the pivot
// permutation; throws NumericalError on a (numerically) singular matrix.
inline std::vector<std::size_t> lu_factor(Mat& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> piv(n);
    std::iota(piv.begin(), piv.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best < 1e-300) throw NumericalError("singular matrix in LU factorization");
        if (p != k) {
            std::swap(piv[k], piv[p]);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        }
        const double pivval = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / pivval;
            a(i, k) = m;
            if (m == 0.0) continue;
            const double* rk = a.row(k);
            double* ri = a.row(i);
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
        }
    }
    return piv;
}

inline Vec lu_solve(const Mat& lu, const std::vector<std::size_t>& piv, const Vec& b) {
    const std::size_t n = lu.rows();
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[piv[i]];
    for (std::size_t i = 1; i < n; ++i) {
        const double* r = lu.row(i);
        double acc = x[i];
        for (std::size_t j = 0; j < i; ++j) acc -= r[j] * x[j];
        x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        const double* r = lu.row(i);
        double acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= r[j] * x[j];
        x[i] = acc / r[i];
    }
    return x;
}

// Solves A X = B column by column.
inline Mat solve_matrix(Mat a, const Mat& b) {
    const std::size_t n = a.rows();
    auto piv = lu_factor(a);
    Mat x(n, b.cols());
    Vec rhs(n);
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) rhs[i] = b(i, j);
        Vec sol = lu_solve(a, piv, rhs);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    return x;
}

struct EighResult {
    Vec eigenvalues;  // descending
    Mat vectors;      // columns are the corresponding orthonormal eigenvectors
};

// Cyclic Jacobi sweeps for a symmetric matrix; deterministic (p, q) order.
// Stops when the off-diagonal Frobenius norm drops below
// tol * max(1, ||A||_F).
inline EighResult jacobi_eigh(Mat a, double tol = 1e-12, int max_sweeps = 64) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw ValidationError("jacobi_eigh expects a square matrix");
    Mat v = Mat::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };
    double fro = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fro += a(i, j) * a(i, j);
    fro = std::sqrt(fro);
    const double stop = tol * std::max(1.0, fro);

    int sweep = 0;
    while (off_norm() > stop) {
        if (++sweep > max_sweeps)
            throw NumericalError("jacobi_eigh did not converge; off-diagonal residual " +
                                 std::to_string(off_norm()));
        // rotations on entries already far below the target are skipped;
        // the leftover off-diagonal mass stays under stop/sqrt(2)
        const double skip = stop / (2.0 * static_cast<double>(n));
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= skip) continue;
                const double app = a(p, p), aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
    EighResult r;
    r.eigenvalues.resize(n);
    r.vectors = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        r.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
    }
    return r;
}

// Spectral radius of a nonnegative matrix via power iteration with a small
// diagonal shift (keeps the iteration from cycling on periodic structures).
inline double spectral_radius_nonnegative(const Mat& m, double tol = 1e-13,
                                          int max_iter = 20000) {
    const std::size_t n = m.rows();
    const double shift = 1e-3;
    Vec x(n, 1.0 / static_cast<double>(n));
    double rho = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec y = m * x;
        for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
        const double ny = norm1(y);
        if (ny < 1e-300) return 0.0;  // nilpotent-like: iterate collapsed
        const double est = ny / norm1(x);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
        if (it > 4 && std::abs(est - rho) <= tol * std::max(1.0, est)) {
            rho = est;
            break;
        }
        rho = est;
    }
    return std::max(0.0, rho - shift);
}

// Largest singular value via power iteration on H^T H.
inline double largest_singular_value(const Mat& h, double tol = 1e-13,
                                     int max_iter = 20000) {
    const std::size_t n = h.cols();
    Vec x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double lam = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec y = transpose_times(h, h * x);
        const double ny = norm2(y);
        if (ny < 1e-300) return 0.0;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
        if (it > 4 && std::abs(ny - lam) <= tol * std::max(1.0, ny)) {
            lam = ny;
            break;
        }
        lam = ny;
    }
    return std::sqrt(std::max(0.0, lam));
}

} // namespace fjpol

#endif // FJPOL_LINALG_HPP
