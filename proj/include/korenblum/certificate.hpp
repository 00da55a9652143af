#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "korenblum/bergman_series.hpp"
#include "korenblum/domination.hpp"
#include "korenblum/params.hpp"
#include "korenblum/quadrature.hpp"
#include "korenblum/rational.hpp"
#include "korenblum/version.hpp"

namespace korenblum {

/// Exact rational as decimal strings, so no digit is lost in JSON.
struct ExactValue {
    std::string numerator;
    std::string denominator;

    static ExactValue from(const Rational& value)
    {
        return {boost::multiprecision::numerator(value).str(), boost::multiprecision::denominator(value).str()};
    }
    Rational to_rational() const { return Rational(BigInt(numerator), BigInt(denominator)); }

    friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

struct RootSummary {
    double value = 0.0;
    double tolerance = 0.0;
    double residual = 0.0;
    friend bool operator==(const RootSummary&, const RootSummary&) = default;
};

struct DifferenceSummary {
    std::string mode;
    int truncation_index = 0;
    double delta_lower = 0.0;
    double delta_upper = 0.0;
    double width = 0.0;
    std::optional<ExactValue> delta_lower_exact;
    std::optional<ExactValue> delta_upper_exact;
    friend bool operator==(const DifferenceSummary&, const DifferenceSummary&) = default;
};

struct DominationSummary {
    std::string evidence = "sampled";
    std::string verdict;
    int radial_samples = 0;
    int angular_samples = 0;
    double tolerance = 0.0;
    double grid_max_ratio = 0.0;
    double h_at_c = 0.0;
    double h_at_1 = 0.0;
    double pole_radius = 0.0;
    double zero_radius = 0.0;
    double angular_peak_offset = 0.0;
    double angular_step = 0.0;
    friend bool operator==(const DominationSummary&, const DominationSummary&) = default;
};

struct CrossCheckSummary {
    bool pass = false;
    int radial_nodes = 0;
    int angular_nodes = 0;
    double tolerance = 0.0;
    double max_discrepancy = 0.0;
    double delta_quad = 0.0;
    double f_series = 0.0;
    double f_original = 0.0;
    double f_substituted = 0.0;
    double g_series = 0.0;
    double g_original = 0.0;
    double g_substituted = 0.0;
    friend bool operator==(const CrossCheckSummary&, const CrossCheckSummary&) = default;
};

/// Machine-readable record of one verification run.
struct Certificate {
    std::string tool = "korenblum";
    std::string version = std::string(korenblum::version);
    std::string a;            // decimal string as given
    ExactValue a_exact;
    int n = 0;
    std::optional<RootSummary> critical_radius;
    std::optional<DominationSummary> domination;
    std::optional<DifferenceSummary> difference;
    std::optional<CrossCheckSummary> cross_check;
    bool passed = false;      // every check ran and passed
    bool certified = false;   // passed, with an exact-rational delta_lower > 0
    std::optional<std::string> failed_check;
    std::optional<std::string> failure_message;
    double wall_time_seconds = 0.0;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

namespace detail {

// JSON has no infinities; a = 0 puts the pole and zero radii at infinity.
inline nlohmann::json finite_or_null(double value)
{
    return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

inline double finite_or_inf(const nlohmann::json& j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value)
{
    j[key] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

template <class T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& value)
{
    if (j.contains(key) && !j.at(key).is_null())
        value = j.at(key).get<T>();
    else
        value.reset();
}

} // namespace detail

inline void to_json(nlohmann::json& j, const ExactValue& v)
{
    j = {{"numerator", v.numerator}, {"denominator", v.denominator}};
}
inline void from_json(const nlohmann::json& j, ExactValue& v)
{
    j.at("numerator").get_to(v.numerator);
    j.at("denominator").get_to(v.denominator);
}

inline void to_json(nlohmann::json& j, const RootSummary& v)
{
    j = {{"value", v.value}, {"tolerance", v.tolerance}, {"residual", v.residual}};
}
inline void from_json(const nlohmann::json& j, RootSummary& v)
{
    j.at("value").get_to(v.value);
    j.at("tolerance").get_to(v.tolerance);
    j.at("residual").get_to(v.residual);
}

inline void to_json(nlohmann::json& j, const DifferenceSummary& v)
{
    j = {{"mode", v.mode},
         {"truncation_index", v.truncation_index},
         {"delta_lower", v.delta_lower},
         {"delta_upper", v.delta_upper},
         {"width", v.width}};
    detail::put_optional(j, "delta_lower_exact", v.delta_lower_exact);
    detail::put_optional(j, "delta_upper_exact", v.delta_upper_exact);
}
inline void from_json(const nlohmann::json& j, DifferenceSummary& v)
{
    j.at("mode").get_to(v.mode);
    j.at("truncation_index").get_to(v.truncation_index);
    j.at("delta_lower").get_to(v.delta_lower);
    j.at("delta_upper").get_to(v.delta_upper);
    j.at("width").get_to(v.width);
    detail::get_optional(j, "delta_lower_exact", v.delta_lower_exact);
    detail::get_optional(j, "delta_upper_exact", v.delta_upper_exact);
}

inline void to_json(nlohmann::json& j, const DominationSummary& v)
{
    j = {{"evidence", v.evidence},
         {"verdict", v.verdict},
         {"radial_samples", v.radial_samples},
         {"angular_samples", v.angular_samples},
         {"tolerance", v.tolerance},
         {"grid_max_ratio", v.grid_max_ratio},
         {"h_at_c", v.h_at_c},
         {"h_at_1", v.h_at_1},
         {"pole_radius", detail::finite_or_null(v.pole_radius)},
         {"zero_radius", detail::finite_or_null(v.zero_radius)},
         {"angular_peak_offset", v.angular_peak_offset},
         {"angular_step", v.angular_step}};
}
inline void from_json(const nlohmann::json& j, DominationSummary& v)
{
    j.at("evidence").get_to(v.evidence);
    j.at("verdict").get_to(v.verdict);
    j.at("radial_samples").get_to(v.radial_samples);
    j.at("angular_samples").get_to(v.angular_samples);
    j.at("tolerance").get_to(v.tolerance);
    j.at("grid_max_ratio").get_to(v.grid_max_ratio);
    j.at("h_at_c").get_to(v.h_at_c);
    j.at("h_at_1").get_to(v.h_at_1);
    v.pole_radius = detail::finite_or_inf(j.at("pole_radius"));
    v.zero_radius = detail::finite_or_inf(j.at("zero_radius"));
    j.at("angular_peak_offset").get_to(v.angular_peak_offset);
    j.at("angular_step").get_to(v.angular_step);
}

inline void to_json(nlohmann::json& j, const CrossCheckSummary& v)
{
    j = {{"pass", v.pass},
         {"radial_nodes", v.radial_nodes},
         {"angular_nodes", v.angular_nodes},
         {"tolerance", v.tolerance},
         {"max_discrepancy", v.max_discrepancy},
         {"delta_quad", v.delta_quad},
         {"f", {{"series_midpoint", v.f_series}, {"original", v.f_original}, {"substituted", v.f_substituted}}},
         {"g", {{"series_midpoint", v.g_series}, {"original", v.g_original}, {"substituted", v.g_substituted}}}};
}
inline void from_json(const nlohmann::json& j, CrossCheckSummary& v)
{
    j.at("pass").get_to(v.pass);
    j.at("radial_nodes").get_to(v.radial_nodes);
    j.at("angular_nodes").get_to(v.angular_nodes);
    j.at("tolerance").get_to(v.tolerance);
    j.at("max_discrepancy").get_to(v.max_discrepancy);
    j.at("delta_quad").get_to(v.delta_quad);
    const auto& f = j.at("f");
    f.at("series_midpoint").get_to(v.f_series);
    f.at("original").get_to(v.f_original);
    f.at("substituted").get_to(v.f_substituted);
    const auto& g = j.at("g");
    g.at("series_midpoint").get_to(v.g_series);
    g.at("original").get_to(v.g_original);
    g.at("substituted").get_to(v.g_substituted);
}

inline void to_json(nlohmann::json& j, const Certificate& v)
{
    j = {{"tool", v.tool},
         {"version", v.version},
         {"params", {{"a", v.a}, {"a_exact", v.a_exact}, {"n", v.n}}},
         {"passed", v.passed},
         {"certified", v.certified},
         {"wall_time_seconds", v.wall_time_seconds}};
    detail::put_optional(j, "critical_radius", v.critical_radius);
    detail::put_optional(j, "domination", v.domination);
    detail::put_optional(j, "difference", v.difference);
    detail::put_optional(j, "cross_check", v.cross_check);
    detail::put_optional(j, "failed_check", v.failed_check);
    detail::put_optional(j, "failure_message", v.failure_message);
}
inline void from_json(const nlohmann::json& j, Certificate& v)
{
    j.at("tool").get_to(v.tool);
    j.at("version").get_to(v.version);
    const auto& params = j.at("params");
    params.at("a").get_to(v.a);
    params.at("a_exact").get_to(v.a_exact);
    params.at("n").get_to(v.n);
    j.at("passed").get_to(v.passed);
    j.at("certified").get_to(v.certified);
    j.at("wall_time_seconds").get_to(v.wall_time_seconds);
    detail::get_optional(j, "critical_radius", v.critical_radius);
    detail::get_optional(j, "domination", v.domination);
    detail::get_optional(j, "difference", v.difference);
    detail::get_optional(j, "cross_check", v.cross_check);
    detail::get_optional(j, "failed_check", v.failed_check);
    detail::get_optional(j, "failure_message", v.failure_message);
}

template <class T>
DifferenceSummary summarize(const DifferenceResult<T>& delta)
{
    DifferenceSummary summary;
    summary.mode = std::string(to_string(DifferenceResult<T>::mode));
    summary.truncation_index = delta.truncation_index;
    summary.delta_lower = to_double(delta.delta_lower);
    summary.delta_upper = to_double(delta.delta_upper);
    summary.width = to_double(delta.width());
    if constexpr (std::is_same_v<T, Rational>) {
        summary.delta_lower_exact = ExactValue::from(delta.delta_lower);
        summary.delta_upper_exact = ExactValue::from(delta.delta_upper);
    }
    return summary;
}

inline DominationSummary summarize(const DominationReport& report)
{
    DominationSummary s;
    s.verdict = std::string(to_string(report.verdict));
    s.radial_samples = report.radial_samples;
    s.angular_samples = report.angular_samples;
    s.tolerance = report.tol;
    s.grid_max_ratio = report.grid_max_ratio;
    s.h_at_c = report.h_at_c;
    s.h_at_1 = report.h_at_1;
    s.pole_radius = report.pole_radius;
    s.zero_radius = report.zero_radius;
    s.angular_peak_offset = report.angular_peak_offset;
    s.angular_step = report.angular_step;
    return s;
}

inline CrossCheckSummary summarize(const CrossCheckReport& report)
{
    return {report.pass,
            report.grid.radial_nodes,
            report.grid.angular_nodes,
            report.tolerance,
            report.max_discrepancy,
            report.delta_quad,
            report.f.series_midpoint,
            report.f.original,
            report.f.substituted,
            report.g.series_midpoint,
            report.g.original,
            report.g.substituted};
}

struct VerifyOptions {
    bool exact = false;
    int terms = default_truncation;
    bool adaptive = false;
    RootOptions root;
    DominationOptions domination;
    QuadratureGrid quadrature;
    double cross_check_tol = 1e-8;
};

/// critical_root -> verify_domination -> norm_difference -> cross_check.
/// Runs every check that its inputs allow and names the first failure.
inline Certificate run_verification(const Params& params, const VerifyOptions& options = {})
{
    const auto start = std::chrono::steady_clock::now();
    Certificate cert;
    cert.a = params.a_decimal();
    cert.a_exact = ExactValue::from(params.a_exact());
    cert.n = params.n();

    auto fail = [&cert](const char* check, const std::string& message) {
        if (!cert.failed_check) {
            cert.failed_check = check;
            cert.failure_message = message;
        }
    };

    std::optional<double> c;
    try {
        const auto root = critical_root(params, options.root);
        c = root.value;
        cert.critical_radius = RootSummary{root.value, options.root.tol, root.residual};
    } catch (const Error& e) {
        fail("critical_root", e.what());
    }

    if (c) {
        try {
            const auto report = verify_domination(params, *c, options.domination);
            cert.domination = summarize(report);
            if (!report.passed())
                fail("domination", report.message);
        } catch (const Error& e) {
            fail("domination", e.what());
        }
    }

    try {
        if (options.exact) {
            const auto delta = options.adaptive ? norm_difference_adaptive<Rational>(params, 8)
                                                : norm_difference<Rational>(params, options.terms);
            cert.difference = summarize(delta);
            if (!delta.positive())
                fail("norm_difference", "delta_lower = " + to_decimal_string(delta.delta_lower, 30) + " <= 0");
        } else {
            const auto delta = options.adaptive ? norm_difference_adaptive<double>(params, 8)
                                                : norm_difference<double>(params, options.terms);
            cert.difference = summarize(delta);
            if (!delta.positive())
                fail("norm_difference", "delta_lower = " + std::to_string(delta.delta_lower) + " <= 0");
        }
    } catch (const Error& e) {
        fail("norm_difference", e.what());
    }

    try {
        const auto report = cross_check(params, options.quadrature, options.cross_check_tol);
        cert.cross_check = summarize(report);
        if (!report.pass)
            fail("cross_check", "max discrepancy " + std::to_string(report.max_discrepancy) + " exceeds " +
                                    std::to_string(report.tolerance));
    } catch (const Error& e) {
        fail("cross_check", e.what());
    }

    cert.passed = !cert.failed_check && cert.critical_radius && cert.domination && cert.difference &&
                  cert.cross_check;
    cert.certified = cert.passed && cert.difference->delta_lower_exact.has_value();
    cert.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

} // namespace korenblum
