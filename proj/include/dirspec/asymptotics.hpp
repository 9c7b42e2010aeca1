#pragma once

// Term-by-term evaluation of the second-order Dirichlet eigenvalue expansion:
// the first-order value (m pi)^2 + c_0 - c_{2m}, the single sums a1/b1, the
// double sums a2/b2, the triple-sum remainder diagnostic r3, and the
// cumulative auxiliary integrals on the even/odd channels.
//
// Conventions shared by every sum:
//   * denominators are lambda - (pi (m + m_t))^2 at the literal summation
//     index m_t of each factor;
//   * excluded indices (0 and -2m) apply to m_1 and to the accumulated sums
//     m_1 + m_2 (+ m_3) that address coefficients;
//   * a term whose numerator is exactly zero is skipped before the
//     near-singular denominator guard fires, so index slots that only carry
//     vanishing coefficients (c_0 after normalization, c_{2m} beyond the
//     bandwidth) are harmless;
//   * sums run in a fixed ascending index order into long-double accumulators
//     for bit-deterministic results.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirspec/potential.hpp"
#include "dirspec/quadrature.hpp"
#include "dirspec/solver.hpp"

namespace dirspec {

// Value of one expansion sum plus an exact bound on the truncated tail
// (absolute sum of every dropped term with support inside max_index).
struct TermValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

inline double first_order_eigenvalue(std::size_t m, const CosineCoeffs& coeffs) {
    if (m == 0) throw std::invalid_argument("first_order_eigenvalue: m must be >= 1");
    if (!coeffs.exact_beyond && coeffs.max_index < static_cast<int>(2 * m)) {
        throw std::invalid_argument(
            "first_order_eigenvalue: coefficients must cover index 2m = " +
            std::to_string(2 * m));
    }
    const double mpi = static_cast<double>(m) * kPi;
    return mpi * mpi + coeffs.at(0) - coeffs.at(static_cast<long>(2 * m));
}

namespace detail {

inline double expansion_denominator(double lambda, std::size_t m, long m1) {
    const double freq = kPi * (static_cast<double>(m) + static_cast<double>(m1));
    return lambda - freq * freq;
}

[[noreturn]] inline void near_singular(const char* op, long index) {
    throw std::runtime_error(std::string(op) +
                             ": near-singular denominator at summation index " +
                             std::to_string(index));
}

inline void require_sum_preconditions(const char* op, std::size_t m, std::size_t cutoff,
                                      const CosineCoeffs& coeffs, double guard_delta) {
    if (m == 0) throw std::invalid_argument(std::string(op) + ": m must be >= 1");
    if (cutoff < 2 * m) {
        throw std::invalid_argument(std::string(op) + ": cutoff must be at least 2m = " +
                                    std::to_string(2 * m));
    }
    if (!coeffs.exact_beyond && coeffs.max_index < static_cast<int>(2 * m)) {
        throw std::invalid_argument(std::string(op) + ": coefficients must cover index 2m");
    }
    if (!(guard_delta > 0.0)) {
        throw std::invalid_argument(std::string(op) + ": guard_delta must be positive");
    }
}

// Copy of the coefficients with the mean entry forced to exactly zero: the
// expansion sums live in the normalized (zero-mean) problem, and an exact zero
// is what lets the numerator-skip rule bypass the singular index slots.
inline CosineCoeffs zero_mean_view(const CosineCoeffs& coeffs) {
    CosineCoeffs v = coeffs;
    if (!v.c.empty()) v.c[0] = 0.0;
    return v;
}

}  // namespace detail

// a1 = sum_{m1 != 0, -2m} c_{m1}^2 / (lambda - (pi (m + m1))^2), |m1| <= cutoff.
inline TermValue term_a1(std::size_t m, double lambda, const CosineCoeffs& coeffs,
                         std::size_t cutoff, double guard_delta = 1.0) {
    detail::require_sum_preconditions("term_a1", m, cutoff, coeffs, guard_delta);
    const long C = static_cast<long>(cutoff);
    const long neg2m = -2 * static_cast<long>(m);
    long double acc = 0.0L;
    for (long m1 = -C; m1 <= C; ++m1) {
        if (m1 == 0 || m1 == neg2m) continue;
        const double c1 = coeffs.at(m1);
        const double num = c1 * c1;
        if (num == 0.0) continue;
        const double den = detail::expansion_denominator(lambda, m, m1);
        if (std::fabs(den) <= guard_delta) detail::near_singular("term_a1", m1);
        acc += static_cast<long double>(num) / den;
    }
    long double tail = 0.0L;
    for (long a = C + 1; a <= static_cast<long>(coeffs.max_index); ++a) {
        for (const long m1 : {a, -a}) {
            if (m1 == 0 || m1 == neg2m) continue;
            const double c1 = coeffs.at(m1);
            const double num = c1 * c1;
            if (num == 0.0) continue;
            const double den = detail::expansion_denominator(lambda, m, m1);
            if (std::fabs(den) <= guard_delta) detail::near_singular("term_a1", m1);
            tail += std::fabs(static_cast<long double>(num) / den);
        }
    }
    return {static_cast<double>(acc), static_cast<double>(tail)};
}

// b1: as a1 with numerator c_{m1} * c_{2m + m1}.
inline TermValue term_b1(std::size_t m, double lambda, const CosineCoeffs& coeffs,
                         std::size_t cutoff, double guard_delta = 1.0) {
    detail::require_sum_preconditions("term_b1", m, cutoff, coeffs, guard_delta);
    const long C = static_cast<long>(cutoff);
    const long twom = 2 * static_cast<long>(m);
    long double acc = 0.0L;
    for (long m1 = -C; m1 <= C; ++m1) {
        if (m1 == 0 || m1 == -twom) continue;
        const double num = coeffs.at(m1) * coeffs.at(twom + m1);
        if (num == 0.0) continue;
        const double den = detail::expansion_denominator(lambda, m, m1);
        if (std::fabs(den) <= guard_delta) detail::near_singular("term_b1", m1);
        acc += static_cast<long double>(num) / den;
    }
    long double tail = 0.0L;
    for (long a = C + 1; a <= static_cast<long>(coeffs.max_index) + twom; ++a) {
        for (const long m1 : {a, -a}) {
            if (m1 == 0 || m1 == -twom) continue;
            const double num = coeffs.at(m1) * coeffs.at(twom + m1);
            if (num == 0.0) continue;
            const double den = detail::expansion_denominator(lambda, m, m1);
            if (std::fabs(den) <= guard_delta) detail::near_singular("term_b1", m1);
            tail += std::fabs(static_cast<long double>(num) / den);
        }
    }
    return {static_cast<double>(acc), static_cast<double>(tail)};
}

namespace detail {

// Shared kernel for the double sums; `use_b2_numerator` selects the third
// coefficient factor c_{2m + m1 + m2} (b2) versus c_{m1 + m2} (a2).
inline TermValue double_sum(const char* op, bool use_b2_numerator, std::size_t m, double lambda,
                            const CosineCoeffs& coeffs, std::size_t cutoff, double guard_delta) {
    require_sum_preconditions(op, m, cutoff, coeffs, guard_delta);
    const long C = static_cast<long>(cutoff);
    const long twom = 2 * static_cast<long>(m);
    const long M = coeffs.max_index;

    const auto term = [&](long m1, long m2, double d1) -> double {
        const long m12 = m1 + m2;
        if (m12 == 0 || m12 == -twom) return 0.0;
        const double third = use_b2_numerator ? coeffs.at(twom + m12) : coeffs.at(m12);
        const double num = coeffs.at(m1) * coeffs.at(m2) * third;
        if (num == 0.0) return 0.0;
        if (std::fabs(d1) <= guard_delta) near_singular(op, m1);
        const double d2 = expansion_denominator(lambda, m, m2);
        if (std::fabs(d2) <= guard_delta) near_singular(op, m2);
        return num / (d1 * d2);
    };

    long double acc = 0.0L;
    for (long m1 = -C; m1 <= C; ++m1) {
        if (m1 == 0 || m1 == -twom) continue;
        if (coeffs.at(m1) == 0.0) continue;
        const double d1 = expansion_denominator(lambda, m, m1);
        for (long m2 = -C; m2 <= C; ++m2) {
            acc += static_cast<long double>(term(m1, m2, d1));
        }
    }

    long double tail = 0.0L;
    if (M > C) {
        for (long m1 = -M; m1 <= M; ++m1) {
            if (m1 == 0 || m1 == -twom) continue;
            if (coeffs.at(m1) == 0.0) continue;
            const double d1 = expansion_denominator(lambda, m, m1);
            const bool m1_outside = m1 < -C || m1 > C;
            for (long m2 = -M; m2 <= M; ++m2) {
                if (!m1_outside && m2 >= -C && m2 <= C) continue;
                tail += std::fabs(static_cast<long double>(term(m1, m2, d1)));
            }
        }
    }
    return {static_cast<double>(acc), static_cast<double>(tail)};
}

}  // namespace detail

// a2 = sum over m1, m2 (each |.| <= cutoff; m1 and m1+m2 excluded from {0,-2m})
// of c_{m1} c_{m2} c_{m1+m2} / prod_{t=1,2} (lambda - (pi (m + m_t))^2).
inline TermValue term_a2(std::size_t m, double lambda, const CosineCoeffs& coeffs,
                         std::size_t cutoff, double guard_delta = 1.0) {
    return detail::double_sum("term_a2", false, m, lambda, coeffs, cutoff, guard_delta);
}

// b2: as a2 with numerator c_{m1} c_{m2} c_{2m + m1 + m2}.
inline TermValue term_b2(std::size_t m, double lambda, const CosineCoeffs& coeffs,
                         std::size_t cutoff, double guard_delta = 1.0) {
    return detail::double_sum("term_b2", true, m, lambda, coeffs, cutoff, guard_delta);
}

struct ExpansionOptions {
    std::size_t cutoff = 512;
    bool refine = true;  // one fixed-point pass: re-evaluate the sums at the updated total
    double guard_delta = 1.0;
};

struct ExpansionTerms {
    std::size_t m = 0;
    double base = 0.0;        // (m pi)^2
    double c0 = 0.0;
    double minus_c2m = 0.0;   // -c_{2m}
    double a1 = 0.0;
    double b1 = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;
    std::optional<double> r3_estimate;  // filled by callers running the triple-sum diagnostic
    double lambda_seed = 0.0;           // base + c0 + minus_c2m
    std::size_t cutoff = 0;
    double total = 0.0;       // base + c0 + minus_c2m + a1 - b1 + a2 - b2, in this order
    double tail_bound = 0.0;  // sum of the four per-term tail bounds
};

// Evaluate every expansion term for mode m.  The sums are evaluated on the
// zero-mean coefficient view at the first-order seed and, when refine is set,
// once more at the resulting second-order value.
inline ExpansionTerms lemma1_expansion(std::size_t m, const CosineCoeffs& coeffs,
                                       const ExpansionOptions& opts = {}) {
    if (m == 0) throw std::invalid_argument("lemma1_expansion: m must be >= 1");
    if (opts.cutoff < 2 * m) {
        throw std::invalid_argument("lemma1_expansion: cutoff must be at least 2m");
    }
    if (!coeffs.exact_beyond && coeffs.max_index < static_cast<int>(2 * m)) {
        throw std::invalid_argument("lemma1_expansion: coefficients must cover index 2m");
    }
    const CosineCoeffs norm = detail::zero_mean_view(coeffs);

    ExpansionTerms t;
    t.m = m;
    t.cutoff = opts.cutoff;
    const double mpi = static_cast<double>(m) * kPi;
    t.base = mpi * mpi;
    t.c0 = coeffs.at(0);
    t.minus_c2m = -coeffs.at(static_cast<long>(2 * m));
    t.lambda_seed = t.base + t.c0 + t.minus_c2m;

    // Normalized-problem seed (the mean shift cancels from every denominator).
    double lambda = t.base + t.minus_c2m;
    TermValue a1 = term_a1(m, lambda, norm, opts.cutoff, opts.guard_delta);
    TermValue b1 = term_b1(m, lambda, norm, opts.cutoff, opts.guard_delta);
    TermValue a2 = term_a2(m, lambda, norm, opts.cutoff, opts.guard_delta);
    TermValue b2 = term_b2(m, lambda, norm, opts.cutoff, opts.guard_delta);
    if (opts.refine) {
        lambda = t.base + t.minus_c2m + a1.value - b1.value + a2.value - b2.value;
        a1 = term_a1(m, lambda, norm, opts.cutoff, opts.guard_delta);
        b1 = term_b1(m, lambda, norm, opts.cutoff, opts.guard_delta);
        a2 = term_a2(m, lambda, norm, opts.cutoff, opts.guard_delta);
        b2 = term_b2(m, lambda, norm, opts.cutoff, opts.guard_delta);
    }
    t.a1 = a1.value;
    t.b1 = b1.value;
    t.a2 = a2.value;
    t.b2 = b2.value;
    t.tail_bound = a1.tail_bound + b1.tail_bound + a2.tail_bound + b2.tail_bound;
    t.total = t.base + t.c0 + t.minus_c2m + t.a1 - t.b1 + t.a2 - t.b2;
    return t;
}

// Leading correction ||q||^2 / (4 pi^2 m^2): the large-m limit of a1 and the
// coefficient behind the deviation limit m^2 (lambda_m - (m pi)^2) -> ||q||^2/(4 pi^2).
inline double leading_l2_correction(std::size_t m, double q_l2_sq) {
    if (m == 0) throw std::invalid_argument("leading_l2_correction: m must be >= 1");
    if (!(q_l2_sq >= 0.0)) {
        throw std::invalid_argument("leading_l2_correction: q_l2_sq must be nonnegative");
    }
    const double md = static_cast<double>(m);
    return q_l2_sq / (4.0 * kPi * kPi * md * md);
}

// Cumulative integrals of the even/odd channels and the exponentially
// weighted variants minus their linear corrections:
//   Q(x)   = int_0^x q_channel(t) dt
//   G^±(x) = int_0^x q_channel(t) e^{±2 i m pi t} dt  -  x * (same at x=1).
// Both endpoint values of every G vanish identically by construction; the
// x=1 transforms are recorded as diagnostics.
struct AuxiliaryIntegrals {
    std::size_t m = 0;
    std::vector<double> q_tilde_cum;  // even channel Q
    std::vector<double> q_hat_cum;    // odd channel Q
    std::vector<std::complex<double>> g_tilde_plus, g_tilde_minus;
    std::vector<std::complex<double>> g_hat_plus, g_hat_minus;
    std::complex<double> tilde_transform_plus{}, tilde_transform_minus{};
    std::complex<double> hat_transform_plus{}, hat_transform_minus{};
};

inline AuxiliaryIntegrals auxiliary_integrals(const EvenOddPair& pair, std::size_t m,
                                              double c0_tol = 1e-8) {
    if (m == 0) throw std::invalid_argument("auxiliary_integrals: m must be >= 1");
    const std::size_t n = pair.even_part.n_points;
    if (n != pair.odd_part.n_points || n != pair.even_part.values.size() ||
        n != pair.odd_part.values.size()) {
        throw std::invalid_argument("auxiliary_integrals: even/odd grids must match");
    }
    if (n < 3 || n - 1 < 8 * m) {
        throw std::invalid_argument(
            "auxiliary_integrals: grid too coarse for mode m (need n_points-1 >= 8m)");
    }
    const double h = 1.0 / static_cast<double>(n - 1);
    const double c0 = simpson(pair.even_part.values, h) + simpson(pair.odd_part.values, h);
    if (std::fabs(c0) > c0_tol) {
        throw std::invalid_argument("auxiliary_integrals: potential mean " + std::to_string(c0) +
                                    " exceeds tolerance (normalize first)");
    }

    AuxiliaryIntegrals out;
    out.m = m;
    out.q_tilde_cum = cumulative_integral(pair.even_part.values, h);
    out.q_hat_cum = cumulative_integral(pair.odd_part.values, h);

    const auto channel = [&](const std::vector<double>& values, int sign,
                             std::vector<std::complex<double>>& g, std::complex<double>& total) {
        std::vector<std::complex<double>> weighted(n);
        const double w = sign * 2.0 * static_cast<double>(m) * kPi;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) * h;
            weighted[i] = values[i] * std::complex<double>(std::cos(w * t), std::sin(w * t));
        }
        g = cumulative_integral(weighted, h);
        total = g.back();
        for (std::size_t i = 0; i < n; ++i) {
            g[i] -= total * (static_cast<double>(i) * h);
        }
    };
    channel(pair.even_part.values, +1, out.g_tilde_plus, out.tilde_transform_plus);
    channel(pair.even_part.values, -1, out.g_tilde_minus, out.tilde_transform_minus);
    channel(pair.odd_part.values, +1, out.g_hat_plus, out.hat_transform_plus);
    channel(pair.odd_part.values, -1, out.g_hat_minus, out.hat_transform_minus);
    return out;
}

// Triple-sum remainder diagnostic.  Inner products (q Psi_m, sin(n pi x)) are
// assembled from the eigenfunction sine coefficients through the coupling rule
// (q sqrt(2) sin k pi x, sin n pi x) = (c_{|n-k|} - c_{n+k}) / sqrt(2), with
// sin(-n pi x) = -sin(n pi x) and a vanishing n = 0 slot.
inline double r3_numeric(std::size_t m, const CosineCoeffs& coeffs,
                         const EigenfunctionCoeffs& eig, std::size_t cutoff,
                         double lambda = std::numeric_limits<double>::quiet_NaN(),
                         double guard_delta = 1.0) {
    if (m == 0) throw std::invalid_argument("r3_numeric: m must be >= 1");
    if (cutoff == 0 || cutoff > 16) {
        throw std::invalid_argument("r3_numeric: cutoff must be in [1,16] (cost grows cubically)");
    }
    if (eig.m != m) {
        throw std::invalid_argument("r3_numeric: eigenfunction coefficients must match mode m");
    }
    const std::size_t n_basis = eig.sine_coeffs.size();
    if (n_basis < m + 2 * cutoff) {
        throw std::invalid_argument("r3_numeric: insufficient eigenvector basis (need >= m + 2*cutoff)");
    }
    if (!(guard_delta > 0.0)) {
        throw std::invalid_argument("r3_numeric: guard_delta must be positive");
    }
    const CosineCoeffs norm = detail::zero_mean_view(coeffs);
    if (std::isnan(lambda)) {
        lambda = first_order_eigenvalue(m, norm);
    }

    const long C = static_cast<long>(cutoff);
    const long twom = 2 * static_cast<long>(m);
    const long n_max = static_cast<long>(m) + 3 * C;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // ip[n] = (q Psi_m, sin(n pi x)) for n = 0..n_max.
    std::vector<double> ip(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (long n = 1; n <= n_max; ++n) {
        long double s = 0.0L;
        for (std::size_t k = 1; k <= n_basis; ++k) {
            const double coupling =
                norm.at(n - static_cast<long>(k)) - norm.at(n + static_cast<long>(k));
            if (coupling != 0.0) {
                s += static_cast<long double>(eig.sine_coeffs[k - 1]) * coupling;
            }
        }
        ip[static_cast<std::size_t>(n)] = static_cast<double>(s) * inv_sqrt2;
    }
    const auto ip_signed = [&](long n) -> double {
        if (n == 0) return 0.0;
        if (n < 0) return -ip[static_cast<std::size_t>(-n)];
        return ip[static_cast<std::size_t>(n)];
    };

    long double acc = 0.0L;
    for (long m1 = -C; m1 <= C; ++m1) {
        if (m1 == 0 || m1 == -twom) continue;
        const double c1 = norm.at(m1);
        if (c1 == 0.0) continue;
        const double d1 = detail::expansion_denominator(lambda, m, m1);
        for (long m2 = -C; m2 <= C; ++m2) {
            const long m12 = m1 + m2;
            if (m12 == 0 || m12 == -twom) continue;
            const double c2 = norm.at(m2);
            if (c2 == 0.0) continue;
            const double d2 = detail::expansion_denominator(lambda, m, m2);
            for (long m3 = -C; m3 <= C; ++m3) {
                const long m123 = m12 + m3;
                if (m123 == 0 || m123 == -twom) continue;
                const double num = c1 * c2 * norm.at(m3) *
                                   ip_signed(static_cast<long>(m) + m123);
                if (num == 0.0) continue;
                if (std::fabs(d1) <= guard_delta) detail::near_singular("r3_numeric", m1);
                if (std::fabs(d2) <= guard_delta) detail::near_singular("r3_numeric", m2);
                const double d3 = detail::expansion_denominator(lambda, m, m3);
                if (std::fabs(d3) <= guard_delta) detail::near_singular("r3_numeric", m3);
                acc += static_cast<long double>(num) / (d1 * d2 * d3);
            }
        }
    }
    return static_cast<double>(acc);
}

}  // namespace dirspec
