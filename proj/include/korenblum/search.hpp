#pragma once

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "korenblum/bergman_series.hpp"
#include "korenblum/domination.hpp"
#include "korenblum/errors.hpp"
#include "korenblum/params.hpp"
#include "korenblum/rational.hpp"

namespace korenblum {

/// Best previously published upper bound on the constant.
inline constexpr double prior_upper_bound = 0.67795;
/// Upper bound obtained from the reference pair (a, n) = (0.6666714, 10).
inline constexpr double target_upper_bound = 0.677905;

/// Delta(a) = ||f||^2 - ||g||^2 at (a, n).
template <class T = double>
DifferenceResult<T> delta_of_a(int n, const Rational& a, int K = default_truncation)
{
    return norm_difference<T>(Params(a, n), K);
}

struct DeltaSample {
    Rational a;
    DifferenceResult<double> delta;

    int sign() const { return delta.positive() ? 1 : (delta.negative() ? -1 : 0); }
};

struct SignChange {
    Rational a_lo;
    Rational a_hi;
    int sign_lo = 0;
    int sign_hi = 0;
};

struct CoarseScan {
    std::vector<DeltaSample> samples;
    std::vector<SignChange> sign_changes; // every adjacent pair with opposite certified signs
};

/// a = first, first + step, ..., up to and including last (all decimal strings).
inline std::vector<Rational> decimal_grid(std::string_view first, std::string_view last, std::string_view step)
{
    const Rational lo = parse_decimal(first);
    const Rational hi = parse_decimal(last);
    const Rational h = parse_decimal(step);
    if (!(h > 0) || hi < lo)
        throw InvalidArgument("decimal grid needs step > 0 and last >= first");
    std::vector<Rational> grid;
    for (Rational a = lo; a <= hi; a += h)
        grid.push_back(a);
    return grid;
}

inline CoarseScan coarse_scan(int n, const std::vector<Rational>& a_values, int K = default_truncation)
{
    CoarseScan scan;
    scan.samples.reserve(a_values.size());
    for (const auto& a : a_values)
        scan.samples.push_back({a, delta_of_a<double>(n, a, K)});
    for (std::size_t i = 1; i < scan.samples.size(); ++i) {
        const int s0 = scan.samples[i - 1].sign();
        const int s1 = scan.samples[i].sign();
        if (s0 != 0 && s1 != 0 && s0 != s1)
            scan.sign_changes.push_back({scan.samples[i - 1].a, scan.samples[i].a, s0, s1});
    }
    return scan;
}

inline CoarseScan coarse_scan(int n)
{
    return coarse_scan(n, decimal_grid("0.01", "0.99", "0.01"));
}

struct CriticalA {
    Rational a;
    Rational bracket_lo;
    Rational bracket_hi;
    int steps = 0;
    int max_truncation = 0; // largest K needed to resolve a sign
};

namespace detail {

/// Sign of Delta(a), escalating K until the enclosure excludes zero.
inline int resolved_sign(int n, const Rational& a, int K, int max_terms, int& used)
{
    for (int terms = K; terms <= max_terms; terms *= 2) {
        const auto delta = delta_of_a<double>(n, a, terms);
        used = std::max(used, terms);
        if (delta.positive())
            return 1;
        if (delta.negative())
            return -1;
    }
    throw AmbiguousSign("Delta(a = " + to_decimal_string(a) + ") straddles zero up to K = " +
                        std::to_string(max_terms));
}

} // namespace detail

/// Bisects Delta(a) = 0 on [a_lo, a_hi] until the bracket is narrower than tol.
/// The endpoint signs must be certified and opposite (either orientation).
inline CriticalA critical_a(int n, const Rational& a_lo, const Rational& a_hi, double tol = 1e-12,
                            int K = default_truncation, int max_terms = 1024)
{
    if (!(a_lo < a_hi))
        throw InvalidBracket("bracket must satisfy a_lo < a_hi");
    if (!(tol > 0))
        throw InvalidArgument("bisection tolerance must be positive");

    CriticalA result;
    result.max_truncation = K;
    const int sign_lo = detail::resolved_sign(n, a_lo, K, max_terms, result.max_truncation);
    const int sign_hi = detail::resolved_sign(n, a_hi, K, max_terms, result.max_truncation);
    if (sign_lo == sign_hi)
        throw InvalidBracket("Delta has the same certified sign at a = " + to_decimal_string(a_lo) +
                             " and a = " + to_decimal_string(a_hi));

    Rational lo = a_lo;
    Rational hi = a_hi;
    const Rational width_limit(tol);
    while (hi - lo > width_limit) {
        const Rational mid = (lo + hi) / 2;
        if (detail::resolved_sign(n, mid, K, max_terms, result.max_truncation) == sign_lo)
            lo = mid;
        else
            hi = mid;
        ++result.steps;
    }
    result.a = (lo + hi) / 2;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    return result;
}

/// Smallest multiple of 10^-digits that is >= value.
inline Rational round_up_decimal(const Rational& value, int digits)
{
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    const Rational scaled = value * scale;
    const BigInt num = boost::multiprecision::numerator(scaled);
    const BigInt den = boost::multiprecision::denominator(scaled);
    BigInt q = num / den;
    if (q * den < num)
        q += 1;
    return Rational(q, scale);
}

struct BoundOptions {
    double safety = 5e-6;     // distance above a* in a
    int decimal_digits = 10;  // a is rounded up to this many digits
    double bisection_tol = 1e-12;
    int terms = default_truncation;
    RootOptions root;
    DominationOptions domination;
    std::optional<Rational> forced_a; // skip the search and certify this a
};

struct BoundCandidate {
    Params params;
    std::optional<Rational> a_star;       // zero of Delta when searched
    std::vector<SignChange> sign_changes; // from the coarse scan
    std::optional<double> c;              // absent when p has no interior root
    DifferenceResult<Rational> delta;
    std::optional<DominationReport> domination;
    bool certified = false;
    bool improves_prior = false;
    std::string note;

    double delta_lower() const { return to_double(delta.delta_lower); }
};

/// Certifies one parameter pair: exact Delta enclosure, critical radius and
/// sampled domination. Throws CertificationFailed when exact delta_lower <= 0.
inline BoundCandidate evaluate_candidate(const Params& params, const BoundOptions& options = {})
{
    BoundCandidate candidate{params, std::nullopt, {}, std::nullopt, norm_difference<Rational>(params, options.terms),
                             std::nullopt, false, false, {}};
    if (!candidate.delta.positive())
        throw CertificationFailed("exact delta_lower = " + to_decimal_string(candidate.delta.delta_lower, 30) +
                                  " is not positive at a = " + params.a_decimal() +
                                  ", n = " + std::to_string(params.n()));
    try {
        const auto root = critical_root(params, options.root);
        candidate.c = root.value;
        candidate.domination = verify_domination(params, root.value, options.domination);
        candidate.certified = candidate.domination->passed();
        if (!candidate.certified)
            candidate.note = candidate.domination->message;
    } catch (const NoInteriorRoot& e) {
        candidate.note = e.what();
    } catch (const HypothesisViolated& e) {
        candidate.note = e.what();
    }
    candidate.improves_prior = candidate.certified && *candidate.c < prior_upper_bound;
    return candidate;
}

/// For fixed n: locate the zero a* of Delta where it turns positive, step to
/// a = a* + safety (rounded up to a decimal) and certify that pair. With
/// `forced_a` set, certifies that a directly.
inline BoundCandidate best_bound(int n, const BoundOptions& options = {})
{
    if (!(options.safety > 0))
        throw InvalidArgument("safety margin must be positive");
    if (options.forced_a)
        return evaluate_candidate(Params(*options.forced_a, n), options);

    const auto scan = coarse_scan(n);
    const auto rising = std::find_if(scan.sign_changes.begin(), scan.sign_changes.end(),
                                     [](const SignChange& s) { return s.sign_lo < 0 && s.sign_hi > 0; });
    if (rising == scan.sign_changes.end())
        throw CertificationFailed("no a in (0, 1) where Delta turns positive for n = " + std::to_string(n));

    const auto zero = critical_a(n, rising->a_lo, rising->a_hi, options.bisection_tol, options.terms);
    const Rational a = round_up_decimal(zero.a + Rational(options.safety), options.decimal_digits);
    auto candidate = evaluate_candidate(Params(a, n), options);
    candidate.a_star = zero.a;
    candidate.sign_changes = scan.sign_changes;
    return candidate;
}

struct ScanRow {
    int n = 0;
    std::optional<BoundCandidate> candidate;
    std::string error;
};

struct ScanTable {
    std::vector<ScanRow> rows;              // c descending; rows without c last
    std::optional<std::size_t> best_index; // smallest certified c
};

inline ScanTable scan(const std::vector<int>& n_values, const BoundOptions& options = {}, bool parallel = false)
{
    auto row_for = [&options](int n) {
        ScanRow row;
        row.n = n;
        try {
            if (n < 2)
                throw InvalidArgument("scan needs n >= 2");
            row.candidate = best_bound(n, options);
        } catch (const Error& e) {
            row.error = e.what();
        }
        return row;
    };

    ScanTable table;
    if (parallel) {
        std::vector<std::future<ScanRow>> pending;
        for (int n : n_values)
            pending.push_back(std::async(std::launch::async, row_for, n));
        for (auto& p : pending)
            table.rows.push_back(p.get());
    } else {
        for (int n : n_values)
            table.rows.push_back(row_for(n));
    }

    auto c_of = [](const ScanRow& row) -> std::optional<double> {
        return row.candidate ? row.candidate->c : std::nullopt;
    };
    std::stable_sort(table.rows.begin(), table.rows.end(), [&](const ScanRow& x, const ScanRow& y) {
        const auto cx = c_of(x);
        const auto cy = c_of(y);
        if (cx && cy)
            return *cx > *cy;
        return cx.has_value() && !cy.has_value();
    });
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (!row.candidate || !row.candidate->certified)
            continue;
        if (!table.best_index || *row.candidate->c < *table.rows[*table.best_index].candidate->c)
            table.best_index = i;
    }
    return table;
}

} // namespace korenblum
