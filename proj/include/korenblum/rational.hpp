#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "korenblum/errors.hpp"

namespace korenblum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses a plain decimal literal ("0.6666714", "-3", ".5", "2.") into an
/// exact rational. Exponent notation is rejected so the digits on the command
/// line are exactly the digits that get certified.
inline Rational parse_decimal(std::string_view text)
{
    if (text.empty())
        throw InvalidArgument("empty decimal string");

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }

    BigInt digits = 0;
    BigInt scale = 1;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (ch == '.') {
            if (seen_point)
                throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
        digits = digits * 10 + (ch - '0');
        if (seen_point)
            scale *= 10;
        seen_digit = true;
    }
    if (!seen_digit)
        throw InvalidArgument("malformed decimal '" + std::string(text) + "'");

    Rational value(digits, scale);
    return negative ? Rational(-value) : value;
}

/// Exact decimal rendering when the denominator is of the form 2^i 5^j;
/// otherwise rounds toward zero after `max_fraction_digits` digits.
inline std::string to_decimal_string(const Rational& value, int max_fraction_digits = 60)
{
    BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    out += BigInt(num / den).str();
    BigInt rem = num % den;
    if (rem == 0)
        return out;
    out += '.';
    for (int i = 0; i < max_fraction_digits && rem != 0; ++i) {
        rem *= 10;
        out += static_cast<char>('0' + static_cast<int>(rem / den));
        rem %= den;
    }
    return out;
}

inline double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

inline double to_double(double value)
{
    return value;
}

} // namespace korenblum
