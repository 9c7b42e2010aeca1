#pragma once

// Dirichlet eigenvalues of -y'' + q(x) y on [0,1] by two independent methods:
// a sine-basis Galerkin projection (primary) and Prüfer-angle shooting
// (oracle).  Eigenfunction sine coefficients come from the Galerkin
// eigenvectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dirspec/potential.hpp"
#include "dirspec/symmetric_eigen.hpp"

namespace dirspec {

enum class SolveMethod { galerkin, shooting };

// H_{jk} = (j pi)^2 [j=k] + c_{|j-k|} - c_{j+k}, 1-based j,k, from expanding
// the operator in the orthonormal basis sqrt(2) sin(j pi x) and applying
// 2 sin a sin b = cos(a-b) - cos(a+b).
struct GalerkinOperator {
    std::size_t n_basis = 0;
    SymMatrix matrix;
};

struct Spectrum {
    SolveMethod method = SolveMethod::galerkin;
    std::size_t n_basis = 0;
    std::vector<double> eigenvalues;  // ascending, mean shift re-added
    double mean_shift = 0.0;
    std::vector<double> est_error;  // per-mode estimate; empty when not requested
};

struct EigenfunctionCoeffs {
    std::size_t m = 0;
    std::vector<double> sine_coeffs;  // (Psi_m, sqrt(2) sin k pi x), k = 1..n_basis
    bool normalized = false;
};

inline std::size_t default_n_basis(std::size_t n_modes) {
    return std::max<std::size_t>(256, 8 * n_modes);
}

inline GalerkinOperator build_galerkin_matrix(const CosineCoeffs& coeffs, std::size_t n_basis) {
    if (n_basis == 0) throw std::invalid_argument("build_galerkin_matrix: n_basis must be >= 1");
    if (!coeffs.exact_beyond &&
        coeffs.max_index < static_cast<int>(2 * n_basis)) {
        throw std::invalid_argument(
            "build_galerkin_matrix: coefficients must cover index 2*n_basis = " +
            std::to_string(2 * n_basis) + " (have " + std::to_string(coeffs.max_index) +
            ", not exact beyond)");
    }
    GalerkinOperator op;
    op.n_basis = n_basis;
    op.matrix = SymMatrix::zero(n_basis);
    for (std::size_t j = 1; j <= n_basis; ++j) {
        for (std::size_t k = j; k <= n_basis; ++k) {
            double v = coeffs.at(static_cast<long>(j) - static_cast<long>(k)) -
                       coeffs.at(static_cast<long>(j + k));
            if (j == k) {
                const double jpi = static_cast<double>(j) * kPi;
                v += jpi * jpi;
            }
            op.matrix.at(j - 1, k - 1) = v;
            op.matrix.at(k - 1, j - 1) = v;
        }
    }
    return op;
}

struct GalerkinOptions {
    std::size_t n_basis = 0;     // 0 -> max(256, 8*n_modes)
    bool estimate_error = false;  // basis-doubling comparison
    std::size_t quad_points = 0;  // coefficient quadrature grid (grid specs); 0 -> auto
    EigenOptions eigen{};
};

namespace detail {

inline std::vector<double> galerkin_lowest(const PotentialSpec& shifted, std::size_t n_modes,
                                           std::size_t n_basis, std::size_t quad_points,
                                           const EigenOptions& eopts) {
    const CosineCoeffs coeffs =
        cosine_coefficients(shifted, static_cast<int>(2 * n_basis), quad_points);
    const GalerkinOperator op = build_galerkin_matrix(coeffs, n_basis);
    std::vector<double> vals = symmetric_eigenvalues(op.matrix, eopts);
    vals.resize(n_modes);
    return vals;
}

}  // namespace detail

inline Spectrum solve_spectrum_galerkin(const PotentialSpec& spec, std::size_t n_modes,
                                        const GalerkinOptions& opts = {}) {
    if (n_modes == 0) {
        throw std::invalid_argument("solve_spectrum_galerkin: n_modes must be >= 1");
    }
    const std::size_t n_basis = opts.n_basis != 0 ? opts.n_basis : default_n_basis(n_modes);
    if (n_basis < 4 * n_modes) {
        throw std::invalid_argument("solve_spectrum_galerkin: n_basis must be >= 4*n_modes");
    }
    const auto [shifted, c0] = mean_normalize(spec);

    Spectrum out;
    out.method = SolveMethod::galerkin;
    out.n_basis = n_basis;
    out.mean_shift = c0;
    const std::vector<double> vals =
        detail::galerkin_lowest(shifted, n_modes, n_basis, opts.quad_points, opts.eigen);
    out.eigenvalues.resize(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) out.eigenvalues[i] = vals[i] + c0;
    for (std::size_t i = 1; i < n_modes; ++i) {
        if (!(out.eigenvalues[i - 1] < out.eigenvalues[i])) {
            throw std::runtime_error(
                "solve_spectrum_galerkin: eigenvalues not strictly ascending at m = " +
                std::to_string(i + 1));
        }
    }
    if (opts.estimate_error) {
        const std::vector<double> refined = detail::galerkin_lowest(
            shifted, n_modes, 2 * n_basis, opts.quad_points, opts.eigen);
        out.est_error.resize(n_modes);
        for (std::size_t i = 0; i < n_modes; ++i) {
            out.est_error[i] = std::fabs(vals[i] - refined[i]);
        }
    }
    return out;
}

inline Spectrum solve_spectrum_galerkin(const PotentialSpec& spec, std::size_t n_modes,
                                        std::size_t n_basis) {
    GalerkinOptions opts;
    opts.n_basis = n_basis;
    return solve_spectrum_galerkin(spec, n_modes, opts);
}

namespace detail {

// Step count for the fixed-step integrator, scaling with the oscillation count
// sqrt(lambda)/pi.
inline std::size_t prufer_step_count(double lambda) {
    const double osc = std::ceil(std::sqrt(std::max(lambda, 1.0)) / kPi);
    return 4096 * static_cast<std::size_t>(std::max(1.0, osc));
}

// Scaled Prüfer angle at x=1: with S = sqrt(max(lambda, 1)), integrate
// theta' = S cos^2(theta) + ((lambda - q)/S) sin^2(theta) from theta(0) = 0
// with classical fixed-step RK4.  theta(1) crosses m*pi exactly at the m-th
// Dirichlet eigenvalue for any S > 0 (it counts zeros), and this choice of S
// keeps the right-hand side nearly constant at large lambda, so the fixed
// step count loses no accuracy as the mode number grows.
inline double prufer_theta_at_one(const PotentialSpec& spec, double lambda,
                                  std::size_t n_steps) {
    const double scale = std::sqrt(std::max(lambda, 1.0));
    const double h = 1.0 / static_cast<double>(n_steps);
    const auto rhs = [&](double t, double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        return scale * (c * c) + ((lambda - evaluate_at(spec, t)) / scale) * (s * s);
    };
    double theta = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double k1 = rhs(t, theta);
        const double k2 = rhs(t + 0.5 * h, theta + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, theta + 0.5 * h * k2);
        const double k4 = rhs(t + h, theta + h * k3);
        theta += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return theta;
}

}  // namespace detail

// m-th Dirichlet eigenvalue by Prüfer shooting: bracket around (m pi)^2,
// widen on failure up to pad 40, then bisect the phase mismatch.  Works on the
// mean-normalized potential internally (exact shift equivariance of the ODE)
// so the initial bracket stays centered for potentials with large mean.
inline double solve_eigenvalue_shooting(const PotentialSpec& spec, std::size_t m,
                                        double bracket_pad = 10.0) {
    if (m == 0) throw std::invalid_argument("solve_eigenvalue_shooting: m must be >= 1");
    if (!(bracket_pad > 0.0)) {
        throw std::invalid_argument("solve_eigenvalue_shooting: bracket_pad must be positive");
    }
    validate_spec(spec);
    const auto [shifted, c0] = mean_normalize(spec);

    const double target = static_cast<double>(m) * kPi;
    const double center = target * target;
    const auto theta_at = [&](double lambda) {
        return detail::prufer_theta_at_one(shifted, lambda, detail::prufer_step_count(lambda));
    };

    double pad = bracket_pad;
    double lo = center - pad;
    double hi = center + pad;
    double th_lo = theta_at(lo);
    double th_hi = theta_at(hi);
    while (!(th_lo < target && target < th_hi)) {
        pad *= 2.0;
        if (pad > 40.0) {
            throw std::runtime_error(
                "solve_eigenvalue_shooting: failed to bracket eigenvalue m = " +
                std::to_string(m) + " within pad 40 around (m*pi)^2");
        }
        lo = center - pad;
        hi = center + pad;
        th_lo = theta_at(lo);
        th_hi = theta_at(hi);
    }

    int iters = 0;
    while (hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)) && iters < 200) {
        const double mid = 0.5 * (lo + hi);
        if (theta_at(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iters;
    }
    return 0.5 * (lo + hi) + c0;
}

// Normalized Galerkin eigenvector for the m-th eigenvalue, reusing a
// precomputed eigensystem of the operator.  Sign fixed so the m-th sine
// component is positive.
inline EigenfunctionCoeffs eigenfunction_sine_coeffs(const GalerkinOperator& op, std::size_t m,
                                                     const EigenSystem& sys) {
    if (m == 0 || m > op.n_basis) {
        throw std::invalid_argument("eigenfunction_sine_coeffs: need 1 <= m <= n_basis");
    }
    if (sys.n != op.n_basis) {
        throw std::invalid_argument(
            "eigenfunction_sine_coeffs: eigensystem size does not match operator");
    }
    const double gap_below =
        m >= 2 ? sys.values[m - 1] - sys.values[m - 2] : std::numeric_limits<double>::infinity();
    const double gap_above =
        m < sys.n ? sys.values[m] - sys.values[m - 1] : std::numeric_limits<double>::infinity();
    if (std::min(gap_below, gap_above) < 1e-10) {
        throw std::runtime_error(
            "eigenfunction_sine_coeffs: degenerate eigenvalue cluster at m = " +
            std::to_string(m) + " (gap below 1e-10 signals a numerical fault)");
    }
    long double norm_sq = 0.0L;
    for (std::size_t i = 0; i < sys.n; ++i) {
        const double v = sys.vector_component(i, m - 1);
        norm_sq += static_cast<long double>(v) * v;
    }
    double scale = 1.0 / std::sqrt(static_cast<double>(norm_sq));
    if (sys.vector_component(m - 1, m - 1) < 0.0) scale = -scale;

    EigenfunctionCoeffs out;
    out.m = m;
    out.sine_coeffs.resize(sys.n);
    for (std::size_t i = 0; i < sys.n; ++i) {
        out.sine_coeffs[i] = scale * sys.vector_component(i, m - 1);
    }
    out.normalized = true;
    return out;
}

inline EigenfunctionCoeffs eigenfunction_sine_coeffs(const GalerkinOperator& op, std::size_t m,
                                                     const EigenOptions& eopts = {}) {
    return eigenfunction_sine_coeffs(op, m, symmetric_eigensystem(op.matrix, eopts));
}

}  // namespace dirspec
