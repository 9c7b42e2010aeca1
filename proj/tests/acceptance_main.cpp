// Acceptance gate: ten numbered criteria, one PASS/FAIL line each.
// Exit status is 0 only if every criterion holds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dirspec/harness.hpp"

using namespace dirspec;

namespace {

int failures = 0;

std::string text(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

void run_criterion(int id, const char* title,
                   const std::function<std::pair<bool, std::string>()>& body) {
    bool ok = false;
    std::string detail;
    try {
        std::tie(ok, detail) = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

PotentialSpec cos_poly(const std::vector<std::pair<int, double>>& terms, double offset = 0.0) {
    PotentialSpec s;
    s.kind = PotentialKind::trig;
    s.constant_value = offset;
    for (const auto& [k, amp] : terms) {
        s.trig_terms.push_back(TrigTerm{TrigBasis::cos, k, amp});
    }
    return s;
}

// smooth periodic potential with geometrically decaying cosine coefficients
PotentialSpec poisson_grid(double r, std::size_t n) {
    PotentialSpec s;
    s.kind = PotentialKind::grid;
    const double h = 1.0 / static_cast<double>(n - 1);
    s.grid_samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) * h;
        const double c = std::cos(2.0 * kPi * x);
        s.grid_samples.push_back(GridSample{x, (r * c - r * r) / (1.0 - 2.0 * r * c + r * r)});
    }
    return s;
}

double sq(double x) { return x * x; }

// independent double-loop evaluation of the second-order sums, same index
// conventions: |m1|,|m2| <= cutoff, m1 and m1+m2 excluded from {0,-2m}
double brute_double_sum(bool b2_kind, std::size_t m, double lambda, const CosineCoeffs& coeffs,
                        long cutoff) {
    const auto c = [&coeffs](long k) -> double {
        k = std::labs(k);
        if (k > coeffs.max_index) return 0.0;
        return coeffs.c[static_cast<std::size_t>(k)];
    };
    const long two_m = 2 * static_cast<long>(m);
    long double acc = 0.0L;
    for (long m1 = -cutoff; m1 <= cutoff; ++m1) {
        if (m1 == 0 || m1 == -two_m) continue;
        const double d1 = lambda - sq(kPi * (static_cast<double>(m) + static_cast<double>(m1)));
        for (long m2 = -cutoff; m2 <= cutoff; ++m2) {
            const long m12 = m1 + m2;
            if (m12 == 0 || m12 == -two_m) continue;
            const double num =
                c(m1) * c(m2) * (b2_kind ? c(two_m + m12) : c(m12));
            if (num == 0.0) continue;
            const double d2 =
                lambda - sq(kPi * (static_cast<double>(m) + static_cast<double>(m2)));
            acc += static_cast<long double>(num) /
                   (static_cast<long double>(d1) * static_cast<long double>(d2));
        }
    }
    return static_cast<double>(acc);
}

}  // namespace

int main() {
    const PotentialSpec zero = PotentialSpec::zero();
    const PotentialSpec cos2 = cos_poly({{2, 1.0}});
    const PotentialSpec band4 = cos_poly({{2, 1.0}, {4, 0.5}});
    const PotentialSpec band8 = cos_poly({{2, 1.0}, {4, 0.5}, {6, 0.25}, {8, 0.125}});
    const PotentialSpec smooth = poisson_grid(0.9, 262145);

    run_criterion(1, "zero potential eigenvalues are exact", [&] {
        const Spectrum sp = solve_spectrum_galerkin(zero, 20, 256);
        double worst_g = 0.0, worst_s = 0.0;
        for (std::size_t m = 1; m <= 20; ++m) {
            const double base = sq(static_cast<double>(m) * kPi);
            worst_g = std::max(worst_g, std::fabs(sp.eigenvalues[m - 1] - base) / base);
            const double sh = solve_eigenvalue_shooting(zero, m);
            worst_s = std::max(worst_s, std::fabs(sh - base) / base);
        }
        return std::make_pair(worst_g < 1e-10 && worst_s < 1e-9,
                              text("galerkin rel %.3e, shooting rel %.3e", worst_g, worst_s));
    });

    run_criterion(2, "constant shifts move the spectrum rigidly", [&] {
        double worst = 0.0;
        const std::vector<std::pair<PotentialSpec, PotentialSpec>> pairs = {
            {zero, PotentialSpec::constant(5.0)},
            {cos2, cos_poly({{2, 1.0}}, 5.0)},
        };
        for (const auto& [base_q, lifted_q] : pairs) {
            const Spectrum a = solve_spectrum_galerkin(base_q, 10, 256);
            const Spectrum b = solve_spectrum_galerkin(lifted_q, 10, 256);
            for (std::size_t i = 0; i < 10; ++i) {
                worst = std::max(worst, std::fabs(b.eigenvalues[i] - a.eigenvalues[i] - 5.0));
            }
        }
        return std::make_pair(worst < 1e-9, text("max |shift - 5| = %.3e", worst));
    });

    run_criterion(3, "galerkin matches the shooting oracle", [&] {
        double worst = 0.0;
        for (const PotentialSpec* q : {&zero, &cos2, &band4}) {
            for (std::size_t m = 1; m <= 10; ++m) {
                const Spectrum sp = solve_spectrum_galerkin(*q, m, 8 * m);
                const double sh = solve_eigenvalue_shooting(*q, m);
                worst = std::max(worst, std::fabs(sp.eigenvalues[m - 1] - sh));
            }
        }
        return std::make_pair(worst <= 1e-7, text("max |galerkin - shooting| = %.3e", worst));
    });

    run_criterion(4, "deviation median matches the l2 prediction", [&] {
        const DeviationReport rep = ambarzumyan_deviation(cos2, 32);
        const double predicted = 1.0 / (8.0 * kPi * kPi);
        const double rel = std::fabs(rep.limit_estimate - predicted) / predicted;
        return std::make_pair(rel <= 0.05,
                              text("median m^2 d_m = %.6e vs %.6e, rel dev %.3e",
                                   rep.limit_estimate, predicted, rel));
    });

    run_criterion(5, "second-order totals beat first order below 1e-5", [&] {
        const ComparisonReport rep = compare_spectrum_vs_expansion(cos2, 8, 32);
        bool ok = true;
        double worst = 0.0;
        for (const auto& row : rep.rows) {
            worst = std::max(worst, std::fabs(row.residual_lemma1));
            ok = ok && std::fabs(row.residual_lemma1) < 1e-5 &&
                 std::fabs(row.residual_lemma1) < std::fabs(row.residual_first);
        }
        return std::make_pair(ok, text("max |lambda - total| = %.3e over m = 8..32", worst));
    });

    run_criterion(6, "b-sums vanish for band-limited q and decay for smooth q", [&] {
        const CosineCoeffs cb4 = cosine_coefficients(band4, 64);
        ExpansionOptions eo;
        eo.cutoff = 64;
        bool exact_ok = true;
        for (std::size_t m = 5; m <= 16; ++m) {
            const ExpansionTerms t = lemma1_expansion(m, cb4, eo);
            exact_ok = exact_ok && t.b1 == 0.0;
            if (m >= 7) exact_ok = exact_ok && t.b2 == 0.0;
        }
        const LemmaReport rep = lemma_checks(smooth, 8, 64);
        const bool fit_ok = rep.b1_decay.has_value() && !rep.b1_decay->identically_zero &&
                            rep.b1_decay->exponent <= -2.0;
        const double expo = rep.b1_decay ? rep.b1_decay->exponent : 0.0;
        return std::make_pair(exact_ok && fit_ok,
                              text("bandwidth-4 sums %s, grid |b1| exponent %.2f",
                                   exact_ok ? "exactly zero" : "NONZERO", expo));
    });

    run_criterion(7, "a1 carries the l2 mass and a2 decays", [&] {
        bool ok = true;
        double lo = 2.0, hi = 0.0, worst_expo = -100.0;
        for (const PotentialSpec* q : {&band4, &band8}) {
            const LemmaReport rep = lemma_checks(*q, 8, 48);
            for (const auto& row : rep.rows) {
                if (row.m < 16) continue;
                if (!row.a1_ratio) {
                    ok = false;
                    continue;
                }
                lo = std::min(lo, *row.a1_ratio);
                hi = std::max(hi, *row.a1_ratio);
                ok = ok && *row.a1_ratio >= 0.9 && *row.a1_ratio <= 1.1;
            }
            const bool fit_ok =
                rep.a2_scaled_decay.has_value() &&
                (rep.a2_scaled_decay->identically_zero || rep.a2_scaled_decay->exponent <= -2.0);
            if (rep.a2_scaled_decay && !rep.a2_scaled_decay->identically_zero) {
                worst_expo = std::max(worst_expo, rep.a2_scaled_decay->exponent);
            }
            ok = ok && fit_ok;
        }
        return std::make_pair(ok, text("a1 ratio in [%.4f, %.4f], m^2 a2 exponent <= %.2f", lo,
                                       hi, worst_expo));
    });

    run_criterion(8, "principal sine coefficient tends to one", [&] {
        bool ok = true;
        double worst_dev = 0.0, worst_expo = -100.0;
        for (const PotentialSpec* q : {&cos2, &band4}) {
            const CosineCoeffs coeffs = cosine_coefficients(*q, 64);
            const GalerkinOperator op = build_galerkin_matrix(coeffs, 256);
            const EigenSystem sys = symmetric_eigensystem(op.matrix);
            DecaySeries dev;
            for (std::size_t m = 10; m <= 40; m += 2) {
                const EigenfunctionCoeffs ef = eigenfunction_sine_coeffs(op, m, sys);
                const double a_m = ef.sine_coeffs[m - 1];
                worst_dev = std::max(worst_dev, std::fabs(a_m - 1.0));
                ok = ok && std::fabs(a_m - 1.0) <= 0.1;
                dev.emplace_back(m, std::fabs(1.0 - a_m));
            }
            const DecayFit fit = fit_decay_exponent(dev);
            ok = ok && (fit.identically_zero || fit.exponent <= -1.0);
            if (!fit.identically_zero) worst_expo = std::max(worst_expo, fit.exponent);
        }
        return std::make_pair(
            ok, text("max |a_m - 1| = %.3e, deviation exponent <= %.2f", worst_dev, worst_expo));
    });

    run_criterion(9, "auxiliary cumulatives vanish at the endpoints", [&] {
        double worst_q = 0.0, worst_g = 0.0;
        const std::vector<std::pair<const PotentialSpec*, std::size_t>> cases = {
            {&cos2, 4097}, {&band4, 4097}, {&band8, 4097}, {&smooth, 262145}};
        for (const auto& [q, n] : cases) {
            const EvenOddPair pair = even_odd_split(evaluate(*q, n));
            for (std::size_t m : {std::size_t{1}, std::size_t{8}}) {
                const AuxiliaryIntegrals aux = auxiliary_integrals(pair, m);
                worst_q = std::max({worst_q, std::fabs(aux.q_tilde_cum.back()),
                                    std::fabs(aux.q_hat_cum.back())});
                for (const auto* g :
                     {&aux.g_tilde_plus, &aux.g_tilde_minus, &aux.g_hat_plus, &aux.g_hat_minus}) {
                    worst_g = std::max({worst_g, std::abs(g->front()), std::abs(g->back())});
                }
            }
        }
        return std::make_pair(worst_q <= 1e-12 && worst_g <= 1e-10,
                              text("worst |Q(1)| = %.3e, worst |G| endpoint = %.3e", worst_q,
                                   worst_g));
    });

    run_criterion(10, "double sums match a brute-force oracle", [&] {
        double worst = 0.0;
        const std::vector<std::pair<PotentialSpec, std::size_t>> cases = {
            {cos_poly({{2, 1.0}, {4, 1.0}}), 8},
            {cos_poly({{2, 1.0}, {6, 0.5}}), 9},
        };
        for (const auto& [q, m] : cases) {
            const CosineCoeffs coeffs = cosine_coefficients(q, 160);
            const double lambda = sq(static_cast<double>(m) * kPi);
            const TermValue a2 = term_a2(m, lambda, coeffs, 64);
            const TermValue b2 = term_b2(m, lambda, coeffs, 64);
            worst = std::max(worst,
                             std::fabs(a2.value - brute_double_sum(false, m, lambda, coeffs, 64)));
            worst = std::max(worst,
                             std::fabs(b2.value - brute_double_sum(true, m, lambda, coeffs, 64)));
        }
        return std::make_pair(worst <= 1e-13, text("max |library - brute force| = %.3e", worst));
    });

    std::printf("acceptance: %d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
