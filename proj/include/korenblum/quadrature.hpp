#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "korenblum/bergman_series.hpp"
#include "korenblum/errors.hpp"
#include "korenblum/params.hpp"

namespace korenblum {

// Direct double-integral evaluation of ||f||^2 and ||g||^2, used to cross-check
// the series engine. Both integrands depend on the angle only through n*theta,
// so the angular integral runs over one period of phi = n*theta.

enum class Which { f, g };
enum class Coords { original, substituted };

inline constexpr std::string_view to_string(Which which) { return which == Which::f ? "f" : "g"; }
inline constexpr std::string_view to_string(Coords coords)
{
    return coords == Coords::original ? "original" : "substituted";
}

struct QuadratureGrid {
    int radial_nodes = 128;
    int angular_nodes = 256;

    void validate() const
    {
        if (radial_nodes < 8)
            throw InvalidArgument("quadrature grid needs >= 8 radial nodes");
        if (angular_nodes < 16)
            throw InvalidArgument("quadrature grid needs >= 16 angular nodes");
    }

    QuadratureGrid doubled() const { return {2 * radial_nodes, 2 * angular_nodes}; }
};

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` nodes mapped to [lo, hi].
inline GaussRule gauss_legendre(int count, double lo, double hi)
{
    if (count < 2)
        throw InvalidArgument("Gauss-Legendre rule needs at least 2 nodes");
    GaussRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    const int pairs = (count + 1) / 2;
    for (int i = 0; i < pairs; ++i) {
        // Tricomi's initial guess, then Newton on P_count.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= count; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[count - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[count - 1 - i] = half * w;
    }
    return rule;
}

/// |a + w|^2 / |2 - a w|^2 at w = rho e^{i phi}, in expanded real form.
inline double f_ratio_sq(double a, double rho, double phi)
{
    const double cosine = std::cos(phi);
    const double num = a * a + 2.0 * a * rho * cosine + rho * rho;
    const double den = 4.0 - 4.0 * a * rho * cosine + a * a * rho * rho;
    return num / den;
}

/// |1 + a w|^2 / |2 - a w|^2 at w = rho e^{i phi}.
inline double g_ratio_sq(double a, double rho, double phi)
{
    const double cosine = std::cos(phi);
    const double num = 1.0 + 2.0 * a * rho * cosine + a * a * rho * rho;
    const double den = 4.0 - 4.0 * a * rho * cosine + a * a * rho * rho;
    return num / den;
}

/// |f(r e^{i theta})|^2 * r with phi = n theta.
inline double integrand_f(const Params& params, double r, double phi)
{
    if (r < 0.0 || r > 1.0)
        throw InvalidArgument("integrand radius must lie in [0, 1]");
    const double rho = std::pow(r, params.n());
    return f_ratio_sq(params.a(), rho, phi) * r;
}

/// |g(r e^{i theta})|^2 * r, which carries the factor r^3.
inline double integrand_g(const Params& params, double r, double phi)
{
    if (r < 0.0 || r > 1.0)
        throw InvalidArgument("integrand radius must lie in [0, 1]");
    const double rho = std::pow(r, params.n());
    return g_ratio_sq(params.a(), rho, phi) * r * r * r;
}

namespace detail {

inline double tensor_quadrature(const Params& params, Which which, const QuadratureGrid& grid,
                                Coords coords)
{
    const auto radial = gauss_legendre(grid.radial_nodes, 0.0, 1.0);
    const auto angular = gauss_legendre(grid.angular_nodes, 0.0, 2.0 * std::numbers::pi);
    const double a = params.a();
    const double n = params.n();

    // substituted: rho = u^{n/2} (f) or u^{n/4} (g) absorbs rho^{2/n-1} resp.
    // rho^{4/n-1}, leaving the prefactor 1/(2 pi) resp. 1/(4 pi).
    const double exponent = which == Which::f ? n / 2.0 : n / 4.0;
    const double prefactor = coords == Coords::original
                                 ? 1.0 / std::numbers::pi
                                 : (which == Which::f ? 0.5 : 0.25) / std::numbers::pi;

    double total = 0.0;
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        const double x = radial.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < angular.nodes.size(); ++j) {
            const double phi = angular.nodes[j];
            double value;
            if (coords == Coords::original) {
                value = which == Which::f ? integrand_f(params, x, phi) : integrand_g(params, x, phi);
            } else {
                const double rho = std::pow(x, exponent);
                value = which == Which::f ? f_ratio_sq(a, rho, phi) : g_ratio_sq(a, rho, phi);
            }
            row += angular.weights[j] * value;
        }
        total += radial.weights[i] * row;
    }
    return prefactor * total;
}

} // namespace detail

inline constexpr double refinement_tolerance = 1e-8;

/// Tensor Gauss-Legendre value of ||f||^2 or ||g||^2. Throws NonConvergence
/// when the doubled grid disagrees by more than `refinement_tolerance`.
inline double norm_sq_quad(const Params& params, Which which, const QuadratureGrid& grid = {},
                           Coords coords = Coords::original, bool check_refinement = true)
{
    grid.validate();
    const double value = detail::tensor_quadrature(params, which, grid, coords);
    if (check_refinement) {
        const double refined = detail::tensor_quadrature(params, which, grid.doubled(), coords);
        if (!(std::abs(refined - value) <= refinement_tolerance))
            throw NonConvergence("quadrature of ||" + std::string(to_string(which)) + "||^2 (" +
                                 std::string(to_string(coords)) + ") moved by " +
                                 std::to_string(std::abs(refined - value)) + " under grid doubling");
    }
    return value;
}

struct NormComparison {
    double original = 0.0;
    double substituted = 0.0;
    double series_midpoint = 0.0;

    double max_discrepancy() const
    {
        return std::max({std::abs(original - substituted), std::abs(original - series_midpoint),
                         std::abs(substituted - series_midpoint)});
    }
};

struct CrossCheckReport {
    QuadratureGrid grid;
    NormComparison f;
    NormComparison g;
    double delta_quad = 0.0; // from the original-coordinate values
    double max_discrepancy = 0.0;
    double tolerance = 1e-8;
    bool pass = false;
};

inline CrossCheckReport cross_check(const Params& params, const QuadratureGrid& grid = {},
                                    double tolerance = 1e-8)
{
    CrossCheckReport report;
    report.grid = grid;
    report.tolerance = tolerance;

    const auto series_f = norm_sq_f<double>(params);
    const auto series_g = norm_sq_g<double>(params);
    report.f = {norm_sq_quad(params, Which::f, grid, Coords::original),
                norm_sq_quad(params, Which::f, grid, Coords::substituted),
                0.5 * (series_f.lower + series_f.upper)};
    report.g = {norm_sq_quad(params, Which::g, grid, Coords::original),
                norm_sq_quad(params, Which::g, grid, Coords::substituted),
                0.5 * (series_g.lower + series_g.upper)};
    report.delta_quad = report.f.original - report.g.original;
    report.max_discrepancy = std::max(report.f.max_discrepancy(), report.g.max_discrepancy());
    report.pass = report.max_discrepancy <= tolerance;
    return report;
}

} // namespace korenblum
