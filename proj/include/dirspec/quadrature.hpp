#pragma once

// Composite Simpson quadrature on uniform (2^k + 1)-point grids, plus the
// cumulative antiderivative tables used by the expansion diagnostics.
//
// All routines are deterministic: fixed summation order, long-double
// accumulators so that O(n) roundoff stays far below the tolerances the
// rest of the library promises.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace dirspec {

// True when n = 2^k + 1 for some k >= 1.
inline bool is_pow2_plus_one(std::size_t n) {
    if (n < 3) return false;
    const std::size_t intervals = n - 1;
    return (intervals & (intervals - 1)) == 0;
}

// Smallest 2^k + 1 that is >= n.
inline std::size_t next_pow2_plus_one(std::size_t n) {
    std::size_t p = 2;
    while (p + 1 < n) p <<= 1;
    return p + 1;
}

namespace detail {

template <class T>
struct wide_accumulator {
    using type = long double;
};
template <class T>
struct wide_accumulator<std::complex<T>> {
    using type = std::complex<long double>;
};

template <class T>
inline T narrow(const typename wide_accumulator<T>::type& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
        return T(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    } else {
        return static_cast<T>(v);
    }
}

}  // namespace detail

// Composite Simpson integral of samples f_0..f_{n-1} on a uniform grid with
// spacing h. Requires an odd sample count (even interval count) >= 3.
template <class T>
T simpson(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("simpson: need an odd sample count >= 3");
    }
    using Acc = typename detail::wide_accumulator<T>::type;
    Acc sum = Acc(f[0]) + Acc(f[n - 1]);
    for (std::size_t i = 1; i + 1 < n; i += 2) sum += Acc(4.0L) * Acc(f[i]);
    for (std::size_t i = 2; i + 1 < n; i += 2) sum += Acc(2.0L) * Acc(f[i]);
    sum *= Acc(static_cast<long double>(h) / 3.0L);
    return detail::narrow<T>(sum);
}

// Cumulative integral table: F_0 = 0 and F_i ~= integral of f over the first
// i intervals. Even indices use composite Simpson panels; odd indices close
// the half panel with the 4th-order three-point rule
//   (h/12) * (5 f_{2j} + 8 f_{2j+1} - f_{2j+2}).
template <class T>
std::vector<T> cumulative_integral(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("cumulative_integral: need an odd sample count >= 3");
    }
    using Acc = typename detail::wide_accumulator<T>::type;
    std::vector<T> out(n);
    out[0] = T{};
    Acc panel_base = Acc{};  // value at the last even index
    const Acc h12 = Acc(static_cast<long double>(h) / 12.0L);
    for (std::size_t j = 0; j + 2 < n; j += 2) {
        const Acc f0 = Acc(f[j]), f1 = Acc(f[j + 1]), f2 = Acc(f[j + 2]);
        out[j + 1] = detail::narrow<T>(panel_base + h12 * (Acc(5.0L) * f0 + Acc(8.0L) * f1 - f2));
        panel_base += h12 * Acc(4.0L) * (f0 + Acc(4.0L) * f1 + f2);
        out[j + 2] = detail::narrow<T>(panel_base);
    }
    return out;
}

}  // namespace dirspec
