#pragma once

// Dense symmetric eigensolver: Householder reduction to tridiagonal form
// followed by the implicit-shift QL iteration, optionally accumulating the
// orthogonal transformations.  Dependency-free and adequate for n ≤ 2048.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirspec {

struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major, n*n

    static SymMatrix zero(std::size_t n) { return SymMatrix{n, std::vector<double>(n * n, 0.0)}; }

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenOptions {
    double rel_tol = 1e-12;  // off-diagonal deflation threshold, relative
    int max_sweeps = 64;     // QL sweep cap per eigenvalue
};

struct EigenSystem {
    std::size_t n = 0;
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major; column j is the eigenvector of values[j]

    double vector_component(std::size_t i, std::size_t j) const { return vectors[i * n + j]; }
};

namespace detail {

inline void require_symmetric(const SymMatrix& mat) {
    if (mat.n == 0 || mat.a.size() != mat.n * mat.n) {
        throw std::invalid_argument("symmetric_eigen: matrix storage does not match n");
    }
    for (std::size_t i = 0; i < mat.n; ++i) {
        for (std::size_t j = i + 1; j < mat.n; ++j) {
            const double x = mat.at(i, j), y = mat.at(j, i);
            if (std::fabs(x - y) > 1e-12 * (std::fabs(x) + std::fabs(y) + 1.0)) {
                throw std::invalid_argument("symmetric_eigen: matrix is not symmetric");
            }
        }
    }
}

// Householder reduction of the symmetric matrix stored in `a` (row-major n*n)
// to tridiagonal form.  On exit d holds the diagonal and e[1..n-1] the
// subdiagonal; when accumulate is true, `a` is overwritten with the orthogonal
// matrix effecting the similarity transform.
inline void householder_tridiag(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                                std::vector<double>& e, bool accumulate) {
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
            if (scale == 0.0) {
                e[i] = A(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                const double g0 = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g0;
                h -= f * g0;
                A(i, l) = f - g0;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    if (accumulate) A(j, i) = A(i, j) / h;
                    double g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
                    e[j] = g / h;
                    f += e[j] * A(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = A(i, j);
                    const double g = e[j] - hh * f;
                    e[j] = g;
                    for (std::size_t k = 0; k <= j; ++k) {
                        A(j, k) -= f * e[k] + g * A(i, k);
                    }
                }
            }
        } else {
            e[i] = A(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (accumulate) {
            if (d[i] != 0.0) {
                for (std::size_t j = 0; j < i; ++j) {
                    double g = 0.0;
                    for (std::size_t k = 0; k < i; ++k) g += A(i, k) * A(k, j);
                    for (std::size_t k = 0; k < i; ++k) A(k, j) -= g * A(k, i);
                }
            }
            d[i] = A(i, i);
            A(i, i) = 1.0;
            for (std::size_t j = 0; j < i; ++j) {
                A(j, i) = 0.0;
                A(i, j) = 0.0;
            }
        } else {
            d[i] = A(i, i);
        }
    }
}

// Implicit-shift QL on a tridiagonal matrix (d diagonal, e[1..n-1] subdiagonal
// on entry).  Eigenvalues land in d, unsorted; when z is non-null its columns
// are rotated along, turning an identity (or Householder product) into the
// eigenvector matrix.
inline void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, std::size_t n,
                              std::vector<double>* z, const EigenOptions& opts) {
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= opts.rel_tol * dd) break;
            }
            if (m != l) {
                if (iter++ == opts.max_sweeps) {
                    throw std::runtime_error(
                        "symmetric_eigen: QL failed to converge after " +
                        std::to_string(opts.max_sweeps) + " sweeps (residual " +
                        std::to_string(std::fabs(e[l])) + " at index " + std::to_string(l) + ")");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (std::size_t k = 0; k < n; ++k) {
                            f = (*z)[k * n + i + 1];
                            (*z)[k * n + i + 1] = s * (*z)[k * n + i] + c * f;
                            (*z)[k * n + i] = c * (*z)[k * n + i] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i + 1 > l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

inline std::vector<double> symmetric_eigenvalues(const SymMatrix& mat,
                                                 const EigenOptions& opts = {}) {
    detail::require_symmetric(mat);
    const std::size_t n = mat.n;
    std::vector<double> a = mat.a;
    std::vector<double> d(n, 0.0), e(n, 0.0);
    if (n == 1) {
        d[0] = a[0];
    } else {
        detail::householder_tridiag(a, n, d, e, false);
        detail::ql_implicit_shift(d, e, n, nullptr, opts);
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline EigenSystem symmetric_eigensystem(const SymMatrix& mat, const EigenOptions& opts = {}) {
    detail::require_symmetric(mat);
    const std::size_t n = mat.n;
    std::vector<double> z = mat.a;
    std::vector<double> d(n, 0.0), e(n, 0.0);
    if (n == 1) {
        d[0] = z[0];
        z[0] = 1.0;
    } else {
        detail::householder_tridiag(z, n, d, e, true);
        detail::ql_implicit_shift(d, e, n, &z, opts);
    }
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    EigenSystem sys;
    sys.n = n;
    sys.values.resize(n);
    sys.vectors.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        sys.values[j] = d[order[j]];
        for (std::size_t i = 0; i < n; ++i) sys.vectors[i * n + j] = z[i * n + order[j]];
    }
    return sys;
}

}  // namespace dirspec
