#pragma once

// Test-only oracle: Taylor coefficients recovered numerically by sampling a
// function on a circle and taking one DFT bin. Evaluates f and g straight from
// their rational formulas, independent of the closed-form coefficients.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using complex = std::complex<double>;

inline complex f_direct(double a, int n, complex z)
{
    const complex w = std::pow(z, n);
    return (a + w) / (2.0 - a * w);
}

inline complex g_direct(double a, int n, complex z)
{
    const complex w = std::pow(z, n);
    return z * (1.0 + a * w) / (2.0 - a * w);
}

/// Coefficient of z^m of `fn`, sampled at `samples` points on |z| = radius.
/// Aliasing error is governed by the coefficient of z^{m + samples}.
inline double taylor_coefficient(const std::function<complex(complex)>& fn, int m, double radius,
                                 int samples = 4096)
{
    complex sum = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double t = 2.0 * std::numbers::pi * j / samples;
        const complex z = std::polar(radius, t);
        sum += fn(z) * std::polar(1.0, -m * t);
    }
    return (sum / static_cast<double>(samples)).real() / std::pow(radius, m);
}

/// Sampling radius in z chosen so that |w| = |z|^n = 1.5 / a stays inside the
/// disk of convergence |w| < 2 / a while keeping high coefficients above roundoff.
inline double sampling_radius(double a, int n)
{
    return a > 0.0 ? std::pow(1.5 / a, 1.0 / n) : 1.0;
}

inline double f_coefficient(double a, int n, int k)
{
    return taylor_coefficient([=](complex z) { return f_direct(a, n, z); }, n * k, sampling_radius(a, n));
}

inline double g_coefficient(double a, int n, int k)
{
    return taylor_coefficient([=](complex z) { return g_direct(a, n, z); }, n * k + 1, sampling_radius(a, n));
}

} // namespace oracle
