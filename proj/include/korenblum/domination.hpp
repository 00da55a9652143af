#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "korenblum/errors.hpp"
#include "korenblum/params.hpp"
#include "korenblum/rational.hpp"

namespace korenblum {

/// h(r) = (a + r^n) / (r (1 + a r^n)), the maximum of |f/g| on |z| = r.
template <class T = double>
T ratio_envelope(const Params& params, const T& r)
{
    if (!(r > 0) || r > 1)
        throw InvalidArgument("envelope radius must lie in (0, 1]");
    const T a = params.a_as<T>();
    T rn = 1;
    for (int i = 0; i < params.n(); ++i)
        rn *= r;
    return T((a + rn) / (r * (1 + a * rn)));
}

/// p(r) = r + a r^{n+1} - a - r^n. On (0, 1], p(r) = 0 iff h(r) = 1, and p(1) = 0.
inline double root_polynomial(const Params& params, double r)
{
    const double rn = std::pow(r, params.n());
    return (r - params.a()) + rn * (params.a() * r - 1.0);
}

inline double root_polynomial_derivative(const Params& params, double r)
{
    const int n = params.n();
    const double rn1 = std::pow(r, n - 1);
    return 1.0 + params.a() * (n + 1) * rn1 * r - n * rn1;
}

struct RootOptions {
    double tol = 1e-14;          // target |p(c)|
    double scan_lo = 1e-3;       // bracket excludes r = 0 ...
    double scan_hi = 1.0 - 1e-3; // ... and the trivial root r = 1
    int scan_cells = 1024;
    double bisection_width = 1e-10;
    int max_newton = 50;
};

struct CriticalRoot {
    double value = 0.0;
    double residual = 0.0; // |p(value)|
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int bisection_steps = 0;
    int newton_steps = 0;
    std::vector<double> bracket_widths; // after each bisection step
};

/// Root of h(c) = 1 in (0, 1): the last sign change of p on the scan interval,
/// bisected to `bisection_width` and then Newton-polished to |p| < tol.
inline CriticalRoot critical_root(const Params& params, const RootOptions& options = {})
{
    if (!(options.tol > 0))
        throw InvalidArgument("root tolerance must be positive");
    if (params.a() <= 0.0)
        throw InvalidArgument("critical root needs a > 0");

    const double step = (options.scan_hi - options.scan_lo) / options.scan_cells;
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    double left = options.scan_lo;
    double p_left = root_polynomial(params, left);
    for (int i = 1; i <= options.scan_cells; ++i) {
        const double right = options.scan_lo + step * i;
        const double p_right = root_polynomial(params, right);
        if ((p_left <= 0.0) != (p_right <= 0.0) || p_left == 0.0) {
            lo = left;
            hi = right;
            found = true;
        }
        left = right;
        p_left = p_right;
    }
    if (!found)
        throw NoInteriorRoot("p(r) = r + a r^(n+1) - a - r^n has no sign change in (" +
                             std::to_string(options.scan_lo) + ", " +
                             std::to_string(options.scan_hi) + ") for n = " +
                             std::to_string(params.n()));

    CriticalRoot root;
    double p_lo = root_polynomial(params, lo);
    while (hi - lo > options.bisection_width) {
        const double mid = 0.5 * (lo + hi);
        const double p_mid = root_polynomial(params, mid);
        if ((p_mid <= 0.0) == (p_lo <= 0.0)) {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
        }
        ++root.bisection_steps;
        root.bracket_widths.push_back(hi - lo);
    }
    root.bracket_lo = lo;
    root.bracket_hi = hi;

    double c = 0.5 * (lo + hi);
    double residual = std::abs(root_polynomial(params, c));
    while (residual >= options.tol && root.newton_steps < options.max_newton) {
        const double next = c - root_polynomial(params, c) / root_polynomial_derivative(params, c);
        ++root.newton_steps;
        if (!(next >= lo && next <= hi))
            break;
        const double next_residual = std::abs(root_polynomial(params, next));
        if (next == c || next_residual > residual) {
            if (next_residual <= residual) {
                c = next;
                residual = next_residual;
            }
            break;
        }
        c = next;
        residual = next_residual;
    }
    root.value = c;
    root.residual = residual;
    return root;
}

struct PoleZeroRadii {
    double pole_radius = 0.0; // |z| where 2 - a z^n = 0
    double zero_radius = 0.0; // |z| where 1 + a z^n = 0
};

/// Infinite radii for a = 0, where f and g are monomials.
inline PoleZeroRadii pole_zero_radii(const Params& params)
{
    const double a = params.a();
    if (a <= 0.0) {
        const double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    const double n = params.n();
    const PoleZeroRadii radii{std::pow(2.0 / a, 1.0 / n), std::pow(1.0 / a, 1.0 / n)};
    if (!(radii.pole_radius > 1.0) || !(radii.zero_radius > 1.0))
        throw HypothesisViolated("f/g has a pole or g a nonzero root inside the closed unit disk");
    return radii;
}

inline std::complex<double> f_value(const Params& params, std::complex<double> z)
{
    const auto w = std::pow(z, params.n());
    return (params.a() + w) / (2.0 - params.a() * w);
}

inline std::complex<double> g_value(const Params& params, std::complex<double> z)
{
    const auto w = std::pow(z, params.n());
    return z * (1.0 + params.a() * w) / (2.0 - params.a() * w);
}

enum class DominationVerdict { pass, hypothesis_violated, domination_violated, angular_maximum_mismatch };

inline constexpr std::string_view to_string(DominationVerdict verdict)
{
    switch (verdict) {
    case DominationVerdict::pass:
        return "pass";
    case DominationVerdict::hypothesis_violated:
        return "hypothesis_violated";
    case DominationVerdict::domination_violated:
        return "domination_violated";
    case DominationVerdict::angular_maximum_mismatch:
        return "angular_maximum_mismatch";
    }
    return "unknown";
}

struct DominationOptions {
    int radial_samples = 256;
    int angular_samples = 1024;
    double tol = 1e-12;
};

/// Sampled evidence for |f| <= |g| on c <= |z| <= 1. Not a proof over the
/// continuum; certificates label it "sampled".
struct DominationReport {
    double c = 0.0;
    double h_at_c = 0.0;
    double h_at_1 = 0.0;
    double pole_radius = 0.0;
    double zero_radius = 0.0;
    double grid_max_ratio = 0.0;
    double worst_r = 0.0;     // sample attaining grid_max_ratio
    double worst_theta = 0.0;
    double angular_step = 0.0;
    double angular_peak_offset = 0.0; // max |theta_argmax - nearest 2 pi m / n|
    int radial_samples = 0;
    int angular_samples = 0;
    double tol = 0.0;
    bool boundary_identity_at_c = false; // |h(c) - 1| <= tol
    bool boundary_identity_at_1 = false;
    bool radii_ok = false;
    bool grid_ok = false;
    bool angular_ok = false;
    DominationVerdict verdict = DominationVerdict::pass;
    std::string message;

    bool passed() const { return verdict == DominationVerdict::pass; }
};

inline DominationReport verify_domination(const Params& params, double c, const DominationOptions& options = {})
{
    if (options.radial_samples < 16 || options.angular_samples < 16)
        throw InvalidArgument("domination grid needs >= 16 samples per axis");
    if (!(c > 0.0) || c > 1.0)
        throw InvalidArgument("inner radius c must lie in (0, 1]");
    if (!(options.tol >= 0.0))
        throw InvalidArgument("domination tolerance must be non-negative");

    DominationReport report;
    report.c = c;
    report.radial_samples = options.radial_samples;
    report.angular_samples = options.angular_samples;
    report.tol = options.tol;
    report.h_at_c = ratio_envelope(params, c);
    report.h_at_1 = ratio_envelope(params, 1.0);
    report.boundary_identity_at_c = std::abs(report.h_at_c - 1.0) <= options.tol;
    report.boundary_identity_at_1 = std::abs(report.h_at_1 - 1.0) <= options.tol;

    try {
        const auto radii = pole_zero_radii(params);
        report.pole_radius = radii.pole_radius;
        report.zero_radius = radii.zero_radius;
        report.radii_ok = true;
    } catch (const HypothesisViolated&) {
        const double n = params.n();
        report.pole_radius = std::pow(2.0 / params.a(), 1.0 / n);
        report.zero_radius = std::pow(1.0 / params.a(), 1.0 / n);
        report.radii_ok = false;
    }

    const double two_pi = 2.0 * std::numbers::pi;
    const double sector = two_pi / params.n();
    report.angular_step = two_pi / options.angular_samples;
    report.angular_ok = true;

    std::vector<double> row(static_cast<std::size_t>(options.angular_samples));
    for (int i = 0; i < options.radial_samples; ++i) {
        const double r = i + 1 == options.radial_samples
                             ? 1.0
                             : c + (1.0 - c) * static_cast<double>(i) / (options.radial_samples - 1);
        int argmax = 0;
        double row_min = std::numeric_limits<double>::infinity();
        for (int j = 0; j < options.angular_samples; ++j) {
            const double theta = report.angular_step * j;
            const auto z = std::polar(r, theta);
            const double ratio = std::abs(f_value(params, z)) / std::abs(g_value(params, z));
            row[j] = ratio;
            row_min = std::min(row_min, ratio);
            if (ratio > row[argmax])
                argmax = j;
            if (ratio > report.grid_max_ratio) {
                report.grid_max_ratio = ratio;
                report.worst_r = r;
                report.worst_theta = theta;
            }
        }
        // Rotationally flat rows (|w| = 1, or a = 0) have no meaningful argmax.
        const double row_max = row[argmax];
        if (row_max - row_min <= options.tol * row_max)
            continue;
        const double theta = report.angular_step * argmax;
        const double offset = std::abs(theta - sector * std::round(theta / sector));
        report.angular_peak_offset = std::max(report.angular_peak_offset, offset);
        if (offset > report.angular_step * (1.0 + 1e-9))
            report.angular_ok = false;
    }
    report.grid_ok = report.grid_max_ratio <= 1.0 + options.tol;

    if (!report.radii_ok) {
        report.verdict = DominationVerdict::hypothesis_violated;
        report.message = "pole radius " + std::to_string(report.pole_radius) + " or zero radius " +
                         std::to_string(report.zero_radius) + " is not > 1";
    } else if (!report.grid_ok || !report.boundary_identity_at_1 || report.h_at_c > 1.0 + options.tol) {
        report.verdict = DominationVerdict::domination_violated;
        report.message = "|f|/|g| reaches " + std::to_string(report.grid_max_ratio) + " at r = " +
                         std::to_string(report.worst_r) + ", theta = " + std::to_string(report.worst_theta);
    } else if (!report.angular_ok) {
        report.verdict = DominationVerdict::angular_maximum_mismatch;
        report.message = "angular maximum of |f/g| strays " + std::to_string(report.angular_peak_offset) +
                         " rad from n*theta = 0 (mod 2 pi)";
    }
    return report;
}

/// Throws the error matching a failed report.
inline void ensure_passed(const DominationReport& report)
{
    switch (report.verdict) {
    case DominationVerdict::pass:
        return;
    case DominationVerdict::hypothesis_violated:
    case DominationVerdict::angular_maximum_mismatch:
        throw HypothesisViolated(report.message);
    case DominationVerdict::domination_violated:
        throw DominationViolated(report.message);
    }
}

} // namespace korenblum
