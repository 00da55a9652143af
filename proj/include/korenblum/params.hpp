#pragma once

#include <string>
#include <string_view>
#include <type_traits>

#include "korenblum/errors.hpp"
#include "korenblum/rational.hpp"

namespace korenblum {

/// The pair (a, n) selecting
///   f(z) = (a + z^n) / (2 - a z^n),   g(z) = z (1 + a z^n) / (2 - a z^n).
///
/// `a` is held exactly, as parsed from its decimal string, alongside its
/// nearest double. The library accepts 0 <= a < 1 and n >= 1 so the degenerate
/// endpoints (a = 0 monomials, n = 1 with no interior root) stay expressible;
/// the command line narrows this to 0 < a < 1, n >= 2.
class Params {
public:
    Params(const Rational& a, int n) : a_exact_(a), a_(to_double(a)), n_(n)
    {
        if (a < 0 || a >= 1)
            throw InvalidArgument("parameter a must lie in [0, 1), got " + to_decimal_string(a));
        if (n < 1)
            throw InvalidArgument("exponent n must be >= 1, got " + std::to_string(n));
    }

    static Params from_decimal(std::string_view a, int n) { return Params(parse_decimal(a), n); }

    const Rational& a_exact() const { return a_exact_; }
    double a() const { return a_; }
    int n() const { return n_; }

    /// a in the requested scalar type.
    template <class T>
    T a_as() const
    {
        if constexpr (std::is_same_v<T, Rational>)
            return a_exact_;
        else
            return static_cast<T>(a_);
    }

    std::string a_decimal() const { return to_decimal_string(a_exact_); }

    friend bool operator==(const Params&, const Params&) = default;

private:
    Rational a_exact_;
    double a_;
    int n_;
};

/// The reference pair a = 0.6666714, n = 10.
inline Params reference_params()
{
    return Params::from_decimal("0.6666714", 10);
}

} // namespace korenblum
