#pragma once

#include <span>
#include <string_view>
#include <vector>
#include <type_traits>

#include "korenblum/errors.hpp"
#include "korenblum/params.hpp"
#include "korenblum/rational.hpp"

namespace korenblum {

// Squared Bergman norms of f and g from their Taylor series.
//
// With w = z^n and 1/(2 - a w) = sum_k a^k w^k / 2^{k+1}:
//   f(z) = sum_k c_k z^{nk},     c_0 = a/2,  c_k = a^{k-1} (a^2 + 2) / 2^{k+1}
//   g(z) = sum_k d_k z^{nk+1},   d_0 = 1/2,  d_k = 3 a^k / 2^{k+1}
// and under normalized area measure ||z^m||^2 = 1/(m+1), so
//   ||f||^2 = sum_k c_k^2 / (nk+1),   ||g||^2 = sum_k d_k^2 / (nk+2).
//
// Every functional here is templated on the scalar: double gives the float
// mode, Rational gives exact enclosures.

enum class Mode { float64, exact_rational };

inline constexpr std::string_view to_string(Mode mode)
{
    return mode == Mode::float64 ? "float" : "exact-rational";
}

template <class T>
inline constexpr Mode mode_of = std::is_same_v<T, Rational> ? Mode::exact_rational : Mode::float64;

inline constexpr int default_truncation = 64;

/// One nonzero Taylor term: `value` multiplies z^exponent.
template <class T>
struct CoefficientTerm {
    int k = 0;
    int exponent = 0;
    T value;
};

template <class T>
struct NormEnclosure {
    T lower;
    T upper;
    int truncation_index = 0;
    static constexpr Mode mode = mode_of<T>;

    T width() const { return upper - lower; }
};

template <class T>
struct DifferenceResult {
    T delta_lower;
    T delta_upper;
    int truncation_index = 0;
    static constexpr Mode mode = mode_of<T>;

    T width() const { return delta_upper - delta_lower; }
    /// True when the enclosure proves ||f|| > ||g||.
    bool positive() const { return delta_lower > 0; }
    bool negative() const { return delta_upper < 0; }
};

namespace detail {

template <class T>
T power(T base, int exponent)
{
    T result = 1;
    for (int i = 0; i < exponent; ++i)
        result *= base;
    return result;
}

template <class T>
T half_power(int k) // 1 / 2^k
{
    if constexpr (std::is_same_v<T, Rational>)
        return Rational(BigInt(1), BigInt(1) << k);
    else
        return power<T>(T(0.5), k);
}

inline void require_truncation(int K)
{
    if (K < 1)
        throw InvalidArgument("truncation index K must be >= 1, got " + std::to_string(K));
}

} // namespace detail

/// Coefficient of z^{nk} in f.
template <class T = double>
T f_coefficient(const Params& params, int k)
{
    if (k < 0)
        throw InvalidArgument("series index must be >= 0");
    const T a = params.a_as<T>();
    if (k == 0)
        return a / 2;
    return detail::power(a, k - 1) * (a * a + 2) * detail::half_power<T>(k + 1);
}

/// Coefficient of z^{nk+1} in g.
template <class T = double>
T g_coefficient(const Params& params, int k)
{
    if (k < 0)
        throw InvalidArgument("series index must be >= 0");
    if (k == 0)
        return T(1) / 2;
    const T a = params.a_as<T>();
    return 3 * detail::power(a, k) * detail::half_power<T>(k + 1);
}

/// Bounds sum_{k>K} coef_k^2 / (nk + offset), where coef_k^2 has exact ratio
/// q = a^2/4 for k >= 1: majorize the weight by its value at k = K+1 and sum
/// the geometric series, giving coef_{K+1}^2 / ((1 - q)(n(K+1) + offset)).
template <class T>
T geometric_tail(const Params& params, T next_coefficient, int K, int offset)
{
    const T a = params.a_as<T>();
    const T q = a * a / 4;
    const T weight = T(1) / T(params.n() * (K + 1) + offset);
    return next_coefficient * next_coefficient * weight / (1 - q);
}

/// Terms k = 0..K of f.
template <class T = double>
std::vector<CoefficientTerm<T>> f_terms(const Params& params, int K)
{
    std::vector<CoefficientTerm<T>> terms;
    terms.reserve(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k)
        terms.push_back({k, params.n() * k, f_coefficient<T>(params, k)});
    return terms;
}

/// Terms k = 0..K of g.
template <class T = double>
std::vector<CoefficientTerm<T>> g_terms(const Params& params, int K)
{
    std::vector<CoefficientTerm<T>> terms;
    terms.reserve(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k)
        terms.push_back({k, params.n() * k + 1, g_coefficient<T>(params, k)});
    return terms;
}

/// ||sum_j value_j z^{exponent_j}||^2 = sum_j value_j^2 / (exponent_j + 1),
/// using orthogonality of distinct monomials. Exponents must be distinct.
template <class T>
T series_norm_sq(std::span<const CoefficientTerm<T>> terms)
{
    T sum = 0;
    for (const auto& term : terms) {
        if (term.exponent < 0)
            throw InvalidArgument("monomial exponent must be >= 0");
        sum += term.value * term.value / T(term.exponent + 1);
    }
    return sum;
}

template <class T = double>
NormEnclosure<T> norm_sq_f(const Params& params, int K = default_truncation)
{
    detail::require_truncation(K);
    const auto terms = f_terms<T>(params, K);
    const T sum = series_norm_sq<T>(terms);
    const T tail = geometric_tail<T>(params, f_coefficient<T>(params, K + 1), K, 1);
    return {sum, sum + tail, K};
}

template <class T = double>
NormEnclosure<T> norm_sq_g(const Params& params, int K = default_truncation)
{
    detail::require_truncation(K);
    const auto terms = g_terms<T>(params, K);
    const T sum = series_norm_sq<T>(terms);
    const T tail = geometric_tail<T>(params, g_coefficient<T>(params, K + 1), K, 2);
    return {sum, sum + tail, K};
}

/// Enclosure of ||f||^2 - ||g||^2.
template <class T = double>
DifferenceResult<T> norm_difference(const Params& params, int K = default_truncation)
{
    const auto f = norm_sq_f<T>(params, K);
    const auto g = norm_sq_g<T>(params, K);
    return {T(f.lower - g.upper), T(f.upper - g.lower), K};
}

/// Doubles K from `start` until the enclosure width drops below
/// `relative_width` times |midpoint| or K would exceed `max_terms`.
template <class T = double>
DifferenceResult<T> norm_difference_adaptive(const Params& params, int start = 8,
                                             double relative_width = 1e-3, int max_terms = 4096)
{
    detail::require_truncation(start);
    int K = start;
    auto result = norm_difference<T>(params, K);
    while (K * 2 <= max_terms) {
        const T mid = (result.delta_lower + result.delta_upper) / 2;
        const T magnitude = mid < 0 ? T(-mid) : mid;
        if (result.width() < T(relative_width) * magnitude)
            break;
        K *= 2;
        result = norm_difference<T>(params, K);
    }
    return result;
}

/// Squared norm of the monomial z^m.
template <class T = double>
T monomial_norm_sq(int m)
{
    const CoefficientTerm<T> term{0, m, T(1)};
    return series_norm_sq<T>(std::span(&term, 1));
}

} // namespace korenblum
