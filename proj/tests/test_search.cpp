#include <catch2/catch_amalgamated.hpp>

#include "korenblum/search.hpp"

using namespace korenblum;
using Catch::Matchers::WithinAbs;

namespace {

const Rational reference_a = parse_decimal("0.6666714");

// Zero of Delta(a) for n = 10, from an independent 50-digit mpmath bisection
// of the same series (200 terms).
constexpr double zero_of_delta_n10 = 0.666670683386;
// Critical radius at that zero, same computation.
constexpr double radius_at_zero_n10 = 0.677904094057;

} // namespace

TEST_CASE("delta_of_a at the documented points", "[search][delta]")
{
    const auto d = delta_of_a<Rational>(10, reference_a);
    CHECK(d.positive());
    CHECK(d.delta_lower >= Rational(22, 100000000));

    const auto zero = delta_of_a<Rational>(10, Rational(0));
    CHECK(zero.delta_lower == Rational(-9, 88));
    CHECK(zero.delta_upper == Rational(-9, 88));
}

TEST_CASE("coarse scan brackets the zero of Delta for n = 10", "[search][scan]")
{
    const auto scan = coarse_scan(10, decimal_grid("0.60", "0.80", "0.01"));
    REQUIRE(scan.samples.size() == 21);
    CHECK(scan.samples.front().a == Rational(60, 100));
    CHECK(scan.samples.back().a == Rational(80, 100));

    REQUIRE(scan.sign_changes.size() == 1);
    const auto& change = scan.sign_changes.front();
    CHECK(change.a_lo == Rational(66, 100));
    CHECK(change.a_hi == Rational(67, 100));
    CHECK(change.sign_lo == -1);
    CHECK(change.sign_hi == 1);

    // Delta(0.70) > 0, consistent with the bracket above.
    CHECK(scan.samples[10].a == Rational(70, 100));
    CHECK(scan.samples[10].sign() == 1);
}

TEST_CASE("default coarse scan finds exactly one rising sign change for each n", "[search][scan]")
{
    for (int n : {2, 5, 10, 20}) {
        const auto scan = coarse_scan(n);
        INFO("n = " << n);
        REQUIRE(scan.sign_changes.size() == 1);
        CHECK(scan.sign_changes.front().sign_lo == -1);
    }
}

TEST_CASE("critical_a bisects to the zero of Delta", "[search][critical_a]")
{
    const auto zero = critical_a(10, Rational(66, 100), Rational(67, 100), 1e-12);
    CHECK_THAT(to_double(zero.a), WithinAbs(zero_of_delta_n10, 1e-11));
    CHECK(zero.bracket_hi - zero.bracket_lo <= Rational(1e-12));
    CHECK(delta_of_a<double>(10, zero.bracket_lo).negative());
    CHECK(delta_of_a<double>(10, zero.bracket_hi).positive());
    // The reference a sits just above the zero.
    CHECK(zero.a < reference_a);
}

TEST_CASE("critical_a accepts either bracket orientation", "[search][critical_a]")
{
    const auto from_zero = critical_a(10, Rational(0), reference_a, 1e-12);
    CHECK_THAT(to_double(from_zero.a), WithinAbs(zero_of_delta_n10, 1e-11));
}

TEST_CASE("critical_a rejects brackets without a certified sign change", "[search][critical_a][errors]")
{
    CHECK_THROWS_AS(critical_a(10, Rational(1, 10), Rational(1, 2)), InvalidBracket);
    CHECK_THROWS_AS(critical_a(10, Rational(7, 10), Rational(8, 10)), InvalidBracket);
    CHECK_THROWS_AS(critical_a(10, Rational(7, 10), Rational(6, 10)), InvalidBracket);
    CHECK_THROWS_AS(critical_a(10, Rational(6, 10), Rational(7, 10), 0.0), InvalidArgument);
}

TEST_CASE("tightening the tolerance tenfold costs about log2(10) steps", "[search][critical_a]")
{
    const auto coarse = critical_a(10, Rational(66, 100), Rational(67, 100), 1e-10);
    const auto fine = critical_a(10, Rational(66, 100), Rational(67, 100), 1e-11);
    const int extra = fine.steps - coarse.steps;
    CHECK(extra >= 3);
    CHECK(extra <= 4);
}

TEST_CASE("round_up_decimal", "[search]")
{
    CHECK(round_up_decimal(Rational(1, 3), 4) == Rational(3334, 10000));
    CHECK(round_up_decimal(Rational(1, 4), 2) == Rational(25, 100));
    CHECK(round_up_decimal(Rational(1, 4), 1) == Rational(3, 10));
}

TEST_CASE("forcing the reference a reproduces the reference bound", "[search][best_bound]")
{
    BoundOptions options;
    options.forced_a = reference_a;
    const auto candidate = best_bound(10, options);
    REQUIRE(candidate.c);
    CHECK_THAT(*candidate.c, WithinAbs(0.6779049274, 1e-9));
    CHECK(candidate.certified);
    CHECK(candidate.improves_prior);
    CHECK(candidate.delta.delta_lower >= Rational(22, 100000000));
    CHECK(*candidate.c < target_upper_bound - 1e-9);
}

TEST_CASE("default safety lands above the reference a", "[search][best_bound]")
{
    const auto candidate = best_bound(10);
    REQUIRE(candidate.c);
    REQUIRE(candidate.a_star);
    CHECK(candidate.certified);
    CHECK(candidate.params.a_exact() >= *candidate.a_star + Rational(5e-6));
    CHECK(*candidate.c >= 0.6779049274);
    CHECK(*candidate.c < prior_upper_bound);
    CHECK(candidate.improves_prior);
}

TEST_CASE("a tiny safety margin beats the reference radius", "[search][best_bound]")
{
    BoundOptions options;
    options.safety = 1e-9;
    const auto candidate = best_bound(10, options);
    REQUIRE(candidate.c);
    CHECK(candidate.certified);
    CHECK(candidate.delta.positive());
    CHECK(*candidate.c < 0.6779049274);
    CHECK_THAT(*candidate.c, WithinAbs(radius_at_zero_n10, 1e-8));
}

TEST_CASE("n = 2 yields an uncertified candidate without an interior root", "[search][best_bound]")
{
    const auto candidate = best_bound(2);
    CHECK(candidate.delta.positive());
    CHECK_FALSE(candidate.c);
    CHECK_FALSE(candidate.certified);
    CHECK_FALSE(candidate.improves_prior);
    CHECK_FALSE(candidate.note.empty());
}

TEST_CASE("certification fails below the zero of Delta", "[search][best_bound][errors]")
{
    BoundOptions options;
    options.forced_a = Rational(6, 10);
    CHECK_THROWS_AS(best_bound(10, options), CertificationFailed);
    BoundOptions bad;
    bad.safety = 0.0;
    CHECK_THROWS_AS(best_bound(10, bad), InvalidArgument);
}

TEST_CASE("critical radius grows with a at fixed n", "[search][property]")
{
    double previous = 0.0;
    for (const char* a : {"0.6666714", "0.667", "0.67", "0.7", "0.75"}) {
        const auto candidate = evaluate_candidate(Params::from_decimal(a, 10));
        REQUIRE(candidate.c);
        CHECK(*candidate.c > previous);
        previous = *candidate.c;
    }
}

TEST_CASE("scan table", "[search][scan]")
{
    CHECK(scan({}).rows.empty());
    CHECK_FALSE(scan({}).best_index);

    const auto table = scan({2, 3, 4});
    REQUIRE(table.rows.size() == 3);
    // Only n = 4 has an interior root; rows without c sort last.
    CHECK(table.rows[0].n == 4);
    REQUIRE(table.best_index);
    CHECK(*table.best_index == 0);

    BoundOptions forced;
    forced.forced_a = reference_a;
    const auto reproduced = scan({10}, forced);
    REQUIRE(reproduced.rows.size() == 1);
    REQUIRE(reproduced.rows[0].candidate);
    CHECK_THAT(*reproduced.rows[0].candidate->c, WithinAbs(0.6779049274, 1e-9));

    const auto bad = scan({1});
    REQUIRE(bad.rows.size() == 1);
    CHECK_FALSE(bad.rows[0].error.empty());
}

TEST_CASE("scan rows are sorted by c descending and certified rows pass every check", "[search][scan]")
{
    const auto table = scan({8, 9, 10, 11, 12}, {}, true);
    REQUIRE(table.rows.size() == 5);
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        CHECK(*table.rows[i - 1].candidate->c > *table.rows[i].candidate->c);
    REQUIRE(table.best_index);
    CHECK(table.rows[*table.best_index].n == 10);
    for (const auto& row : table.rows) {
        const auto& c = *row.candidate;
        if (!c.certified)
            continue;
        CHECK(c.delta.delta_lower > 0);
        REQUIRE(c.domination);
        CHECK(c.domination->radii_ok);
        CHECK(c.domination->passed());
        CHECK(c.improves_prior == (*c.c < prior_upper_bound));
    }
}
