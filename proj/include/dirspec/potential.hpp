#pragma once

// Representation and Fourier analysis of the potential q on [0,1].
//
// A potential is either identically zero, a constant, a trigonometric
// polynomial sum(amp * cos(k pi x)) + sum(amp * sin(k pi x)) (+ constant
// offset), or a piecewise-linear interpolant of samples. The quantities the
// rest of the library consumes are the cosine coefficients
//     c_m = integral_0^1 q(x) cos(m pi x) dx,
// extended symmetrically (c_{-m} = c_m) and treated as zero past max_index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dirspec/quadrature.hpp"

namespace dirspec {

inline constexpr double kPi = std::numbers::pi_v<double>;

enum class PotentialKind { zero, constant, trig, grid };
enum class TrigBasis { cos, sin };

struct TrigTerm {
    TrigBasis basis = TrigBasis::cos;
    int harmonic = 1;      // k >= 1, frequency k*pi
    double amplitude = 0;

    bool operator==(const TrigTerm&) const = default;
};

struct GridSample {
    double x = 0;
    double value = 0;

    bool operator==(const GridSample&) const = default;
};

// Description of q. `constant_value` is the value for kind=constant and an
// additive offset for kind=trig (so trig polynomials with a nonzero mean are
// representable exactly); it is ignored for zero/grid.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::zero;
    std::vector<TrigTerm> trig_terms;
    double constant_value = 0;
    std::vector<GridSample> grid_samples;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec constant(double v) {
        PotentialSpec s;
        s.kind = PotentialKind::constant;
        s.constant_value = v;
        return s;
    }
    static PotentialSpec trig(std::vector<TrigTerm> terms, double offset = 0) {
        PotentialSpec s;
        s.kind = PotentialKind::trig;
        s.trig_terms = std::move(terms);
        s.constant_value = offset;
        return s;
    }
    static PotentialSpec grid(std::vector<GridSample> samples) {
        PotentialSpec s;
        s.kind = PotentialKind::grid;
        s.grid_samples = std::move(samples);
        return s;
    }

    bool operator==(const PotentialSpec&) const = default;
};

// Uniform samples of q at x_i = i/(n_points-1).
struct PotentialTable {
    std::size_t n_points = 0;
    std::vector<double> values;
};

// c_0..c_max_index with the symmetric access rule. exact_beyond means the
// entries past max_index are exactly zero (band-limited cosine potentials).
struct CosineCoeffs {
    int max_index = 0;
    std::vector<double> c;
    bool exact_beyond = false;

    double at(long m) const {
        const long a = m < 0 ? -m : m;
        return a <= max_index ? c[static_cast<std::size_t>(a)] : 0.0;
    }
};

struct HypothesisReport {
    double c0 = 0;
    double endpoint_value_gap = 0;       // |q(0) - q(1)|
    double endpoint_derivative_gap = 0;  // |q'(0) - q'(1)|
    double l1_norm = 0;                  // integral of |q|
    bool admissible = false;
};

struct EvenOddPair {
    PotentialTable even_part;  // (q(x) + q(1-x)) / 2
    PotentialTable odd_part;   // (q(x) - q(1-x)) / 2
};

// ---------------------------------------------------------------------------
// Validation

inline void validate_spec(const PotentialSpec& spec) {
    const auto fail = [](const std::string& why) {
        throw std::invalid_argument("potential spec: " + why);
    };
    if (!std::isfinite(spec.constant_value)) fail("non-finite constant value");
    switch (spec.kind) {
        case PotentialKind::zero:
        case PotentialKind::constant:
            return;
        case PotentialKind::trig: {
            for (const auto& t : spec.trig_terms) {
                if (t.harmonic < 1) fail("trig harmonic must be a positive integer");
                if (!std::isfinite(t.amplitude)) fail("non-finite trig amplitude");
                for (const auto& u : spec.trig_terms) {
                    if (&t != &u && t.basis == u.basis && t.harmonic == u.harmonic) {
                        fail("duplicate trig harmonic " + std::to_string(t.harmonic));
                    }
                }
            }
            return;
        }
        case PotentialKind::grid: {
            const auto& s = spec.grid_samples;
            if (s.size() < 3) fail("grid needs at least 3 samples");
            if (s.front().x != 0.0) fail("grid must start at x = 0");
            if (s.back().x != 1.0) fail("grid must end at x = 1");
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (!std::isfinite(s[i].x) || !std::isfinite(s[i].value)) {
                    fail("non-finite grid sample");
                }
                if (i > 0 && !(s[i].x > s[i - 1].x)) fail("grid x must be strictly increasing");
            }
            return;
        }
    }
    fail("unknown kind");
}

// ---------------------------------------------------------------------------
// Point evaluation

namespace detail {

inline double eval_trig(const PotentialSpec& spec, double x) {
    double v = spec.constant_value;
    for (const auto& t : spec.trig_terms) {
        const double arg = t.harmonic * kPi * x;
        v += t.amplitude * (t.basis == TrigBasis::cos ? std::cos(arg) : std::sin(arg));
    }
    return v;
}

inline double eval_grid(const PotentialSpec& spec, double x) {
    const auto& s = spec.grid_samples;
    if (x <= 0.0) return s.front().value;
    if (x >= 1.0) return s.back().value;
    // first sample with sample.x > x
    auto it = std::upper_bound(s.begin(), s.end(), x,
                               [](double v, const GridSample& g) { return v < g.x; });
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double t = (x - left.x) / (right.x - left.x);
    return left.value + t * (right.value - left.value);
}

}  // namespace detail

inline double evaluate_at(const PotentialSpec& spec, double x) {
    switch (spec.kind) {
        case PotentialKind::zero: return 0.0;
        case PotentialKind::constant: return spec.constant_value;
        case PotentialKind::trig: return detail::eval_trig(spec, x);
        case PotentialKind::grid: return detail::eval_grid(spec, x);
    }
    return 0.0;
}

// Deterministic table of q on the uniform grid x_i = i/(n_points-1).
// n_points must be 2^k + 1 with k >= 2.
inline PotentialTable evaluate(const PotentialSpec& spec, std::size_t n_points) {
    validate_spec(spec);
    if (n_points < 5 || !is_pow2_plus_one(n_points)) {
        throw std::invalid_argument("evaluate: n_points must be 2^k+1 with k >= 2");
    }
    PotentialTable table;
    table.n_points = n_points;
    table.values.resize(n_points);
    const double h = 1.0 / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        table.values[i] = evaluate_at(spec, static_cast<double>(i) * h);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Cosine coefficients

namespace detail {

// integral_0^1 sin(j pi x) dx
inline double mean_of_sin(int j) {
    return (j % 2 != 0) ? 2.0 / (j * kPi) : 0.0;
}

// integral_0^1 sin(j pi x) cos(m pi x) dx, m >= 0
inline double sin_cos_integral(int j, int m) {
    if ((j + m) % 2 == 0) return 0.0;  // includes j == m
    return (2.0 * j) / (kPi * (static_cast<double>(j) * j - static_cast<double>(m) * m));
}

inline int trig_cos_bandwidth(const PotentialSpec& spec) {
    int b = 0;
    for (const auto& t : spec.trig_terms) {
        if (t.basis == TrigBasis::cos) b = std::max(b, t.harmonic);
    }
    return b;
}

inline bool pure_cosine(const PotentialSpec& spec) {
    for (const auto& t : spec.trig_terms) {
        if (t.basis == TrigBasis::sin) return false;
    }
    return true;
}

// Sample count of a grid spec whose own lattice is uniform with 2^k+1 points
// (0 otherwise).  Such a lattice can serve directly as the quadrature grid,
// which keeps the integrand free of kinks inside Simpson panels.
inline std::size_t uniform_pow2_grid_points(const PotentialSpec& spec) {
    if (spec.kind != PotentialKind::grid) return 0;
    const std::size_t n = spec.grid_samples.size();
    if (n < 5 || !is_pow2_plus_one(n)) return 0;
    const double h = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.grid_samples[i].x != static_cast<double>(i) * h) return 0;
    }
    return n;
}

}  // namespace detail

// Default quadrature grid for coefficient/norm integrals: fine enough for the
// requested bandwidth and never below 4097 points.
inline std::size_t default_quadrature_points(int max_index) {
    const std::size_t need = 4 * static_cast<std::size_t>(std::max(max_index, 0)) + 1;
    return next_pow2_plus_one(std::max<std::size_t>(need, 4097));
}

// c_m for m = 0..max_index. Closed forms for zero/constant/trig; composite
// Simpson on n_points (auto-chosen when 0) for grid specs.
inline CosineCoeffs cosine_coefficients(const PotentialSpec& spec, int max_index,
                                        std::size_t n_points = 0) {
    validate_spec(spec);
    if (max_index < 0) throw std::invalid_argument("cosine_coefficients: max_index must be >= 0");
    CosineCoeffs out;
    out.max_index = max_index;
    out.c.assign(static_cast<std::size_t>(max_index) + 1, 0.0);

    switch (spec.kind) {
        case PotentialKind::zero:
            out.exact_beyond = true;
            return out;
        case PotentialKind::constant:
            out.c[0] = spec.constant_value;
            out.exact_beyond = true;
            return out;
        case PotentialKind::trig: {
            out.c[0] = spec.constant_value;
            for (const auto& t : spec.trig_terms) {
                if (t.basis == TrigBasis::cos) {
                    if (t.harmonic <= max_index) out.c[t.harmonic] += 0.5 * t.amplitude;
                } else {
                    out.c[0] += t.amplitude * detail::mean_of_sin(t.harmonic);
                    for (int m = 1; m <= max_index; ++m) {
                        out.c[m] += t.amplitude * detail::sin_cos_integral(t.harmonic, m);
                    }
                }
            }
            out.exact_beyond =
                detail::pure_cosine(spec) && detail::trig_cos_bandwidth(spec) <= max_index;
            return out;
        }
        case PotentialKind::grid: {
            if (n_points == 0) {
                n_points = std::max(default_quadrature_points(max_index),
                                    detail::uniform_pow2_grid_points(spec));
            }
            if (!is_pow2_plus_one(n_points)) {
                throw std::invalid_argument("cosine_coefficients: n_points must be 2^k+1");
            }
            if (n_points - 1 < 4 * static_cast<std::size_t>(max_index)) {
                throw std::invalid_argument(
                    "cosine_coefficients: quadrature grid too coarse for max_index " +
                    std::to_string(max_index) + " (need n_points >= " +
                    std::to_string(4 * max_index + 1) + ", got " + std::to_string(n_points) + ")");
            }
            const PotentialTable table = evaluate(spec, n_points);
            const double h = 1.0 / static_cast<double>(n_points - 1);
            std::vector<double> integrand(n_points);
            for (int m = 0; m <= max_index; ++m) {
                for (std::size_t i = 0; i < n_points; ++i) {
                    integrand[i] = table.values[i] * std::cos(m * kPi * i * h);
                }
                out.c[static_cast<std::size_t>(m)] = simpson(integrand, h);
            }
            out.exact_beyond = false;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Norms and means

namespace detail {

// Exact mean of the potential (integral of q over [0,1]).
inline double exact_mean(const PotentialSpec& spec) {
    switch (spec.kind) {
        case PotentialKind::zero: return 0.0;
        case PotentialKind::constant: return spec.constant_value;
        case PotentialKind::trig: {
            double m = spec.constant_value;
            for (const auto& t : spec.trig_terms) {
                if (t.basis == TrigBasis::sin) m += t.amplitude * mean_of_sin(t.harmonic);
            }
            return m;
        }
        case PotentialKind::grid: {
            // exact for the piecewise-linear interpolant
            long double acc = 0.0L;
            const auto& s = spec.grid_samples;
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                acc += 0.5L * (static_cast<long double>(s[i].value) + s[i + 1].value) *
                       (static_cast<long double>(s[i + 1].x) - s[i].x);
            }
            return static_cast<double>(acc);
        }
    }
    return 0.0;
}

}  // namespace detail

// integral_0^1 q(x)^2 dx. Closed form for trig/constant/zero, exact
// per-segment integration for piecewise-linear grids.
inline double l2_norm_sq(const PotentialSpec& spec) {
    validate_spec(spec);
    switch (spec.kind) {
        case PotentialKind::zero: return 0.0;
        case PotentialKind::constant: return spec.constant_value * spec.constant_value;
        case PotentialKind::trig: {
            const double v = spec.constant_value;
            double sum = v * v;
            for (const auto& t : spec.trig_terms) {
                sum += 0.5 * t.amplitude * t.amplitude;
                if (t.basis == TrigBasis::sin) {
                    sum += 2.0 * v * t.amplitude * detail::mean_of_sin(t.harmonic);
                }
                for (const auto& u : spec.trig_terms) {
                    if (t.basis == TrigBasis::sin && u.basis == TrigBasis::cos) {
                        sum += 2.0 * t.amplitude * u.amplitude *
                               detail::sin_cos_integral(t.harmonic, u.harmonic);
                    }
                }
            }
            return sum;
        }
        case PotentialKind::grid: {
            long double acc = 0.0L;
            const auto& s = spec.grid_samples;
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                const long double a = s[i].value, b = s[i + 1].value;
                acc += (static_cast<long double>(s[i + 1].x) - s[i].x) *
                       (a * a + a * b + b * b) / 3.0L;
            }
            return static_cast<double>(acc);
        }
    }
    return 0.0;
}

// Shift the potential by -c0 so the result has exactly zero mean; returns the
// shifted potential and the removed mean. Callers must add the mean back to every
// eigenvalue they compute from the shifted spec.
inline std::pair<PotentialSpec, double> mean_normalize(const PotentialSpec& spec) {
    validate_spec(spec);
    const double c0 = detail::exact_mean(spec);
    if (c0 == 0.0) return {spec, 0.0};
    PotentialSpec shifted = spec;
    switch (spec.kind) {
        case PotentialKind::zero:
            break;
        case PotentialKind::constant:
            shifted = PotentialSpec::zero();
            break;
        case PotentialKind::trig:
            shifted.constant_value = spec.constant_value - c0;
            break;
        case PotentialKind::grid:
            for (auto& g : shifted.grid_samples) g.value -= c0;
            break;
    }
    return {shifted, c0};
}

// ---------------------------------------------------------------------------
// Even/odd split

// q~(x) = (q(x)+q(1-x))/2 and q^(x) = (q(x)-q(1-x))/2 by index reflection;
// exact on the uniform symmetric grid.
inline EvenOddPair even_odd_split(const PotentialTable& table) {
    const std::size_t n = table.n_points;
    if (n < 3 || table.values.size() != n) {
        throw std::invalid_argument("even_odd_split: malformed table");
    }
    EvenOddPair pair;
    pair.even_part.n_points = n;
    pair.odd_part.n_points = n;
    pair.even_part.values.resize(n);
    pair.odd_part.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = table.values[i];
        const double b = table.values[n - 1 - i];
        pair.even_part.values[i] = 0.5 * (a + b);
        pair.odd_part.values[i] = 0.5 * (a - b);
    }
    return pair;
}

// ---------------------------------------------------------------------------
// Hypothesis checks

namespace detail {

inline double eval_derivative(const PotentialSpec& spec, bool left_end) {
    switch (spec.kind) {
        case PotentialKind::zero:
        case PotentialKind::constant:
            return 0.0;
        case PotentialKind::trig: {
            const double x = left_end ? 0.0 : 1.0;
            double d = 0.0;
            for (const auto& t : spec.trig_terms) {
                const double w = t.harmonic * kPi;
                d += t.amplitude * (t.basis == TrigBasis::cos ? -w * std::sin(w * x)
                                                              : w * std::cos(w * x));
            }
            return d;
        }
        case PotentialKind::grid: {
            // one-sided second-order stencil through the three end samples
            const auto& s = spec.grid_samples;
            const std::size_t n = s.size();
            const GridSample p0 = left_end ? s[0] : s[n - 1];
            const GridSample p1 = left_end ? s[1] : s[n - 2];
            const GridSample p2 = left_end ? s[2] : s[n - 3];
            const double x0 = p0.x, x1 = p1.x, x2 = p2.x;
            return p0.value * (2 * x0 - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
                   p1.value * (x0 - x2) / ((x1 - x0) * (x1 - x2)) +
                   p2.value * (x0 - x1) / ((x2 - x0) * (x2 - x1));
        }
    }
    return 0.0;
}

inline double l1_norm(const PotentialSpec& spec) {
    switch (spec.kind) {
        case PotentialKind::zero: return 0.0;
        case PotentialKind::constant: return std::abs(spec.constant_value);
        case PotentialKind::trig: {
            const std::size_t n = 8193;
            const double h = 1.0 / static_cast<double>(n - 1);
            std::vector<double> f(n);
            for (std::size_t i = 0; i < n; ++i) f[i] = std::abs(eval_trig(spec, i * h));
            return simpson(f, h);
        }
        case PotentialKind::grid: {
            // exact per segment, splitting at sign changes
            long double acc = 0.0L;
            const auto& s = spec.grid_samples;
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                const long double a = s[i].value, b = s[i + 1].value;
                const long double w = static_cast<long double>(s[i + 1].x) - s[i].x;
                if (a * b >= 0.0L) {
                    acc += 0.5L * w * (std::abs(a) + std::abs(b));
                } else {
                    const long double t = a / (a - b);  // root position in [0,1]
                    acc += 0.5L * w * (std::abs(a) * t + std::abs(b) * (1.0L - t));
                }
            }
            return static_cast<double>(acc);
        }
    }
    return 0.0;
}

}  // namespace detail

// Default tolerance for the admissibility check, matching the accuracy regime
// of the representation.
inline double default_hypothesis_tol(const PotentialSpec& spec) {
    return spec.kind == PotentialKind::grid ? 1e-6 : 1e-9;
}

// Endpoint matching + zero mean, the operative hypotheses behind the
// second-order expansion and the inverse-theorem check.
inline HypothesisReport check_hypotheses(const PotentialSpec& spec, double tol) {
    validate_spec(spec);
    HypothesisReport r;
    r.c0 = detail::exact_mean(spec);
    r.endpoint_value_gap = std::abs(evaluate_at(spec, 0.0) - evaluate_at(spec, 1.0));
    r.endpoint_derivative_gap =
        std::abs(detail::eval_derivative(spec, true) - detail::eval_derivative(spec, false));
    r.l1_norm = detail::l1_norm(spec);
    r.admissible = std::abs(r.c0) <= tol && r.endpoint_value_gap <= tol &&
                   r.endpoint_derivative_gap <= tol;
    return r;
}

inline HypothesisReport check_hypotheses(const PotentialSpec& spec) {
    return check_hypotheses(spec, default_hypothesis_tol(spec));
}

}  // namespace dirspec
