#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "korenblum/domination.hpp"

using namespace korenblum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Params reference = reference_params();

} // namespace

TEST_CASE("ratio envelope equals one on the unit circle", "[domination][envelope]")
{
    for (const char* a : {"0", "0.1", "0.6666714", "0.99"}) {
        for (int n : {1, 2, 10}) {
            const auto p = Params::from_decimal(a, n);
            CHECK(ratio_envelope<Rational>(p, Rational(1)) == 1);
            CHECK_THAT(ratio_envelope(p, 1.0), WithinAbs(1.0, 1e-15));
        }
    }
}

TEST_CASE("ratio envelope at the documented points", "[domination][envelope]")
{
    CHECK_THAT(ratio_envelope(reference, 0.6779049274), WithinAbs(1.0, 1e-9));
    const auto zero = Params::from_decimal("0", 6);
    for (double r : {0.1, 0.5, 0.9})
        CHECK_THAT(ratio_envelope(zero, r), WithinRel(std::pow(r, 5), 1e-14));
    CHECK_THROWS_AS(ratio_envelope(reference, 0.0), InvalidArgument);
    CHECK_THROWS_AS(ratio_envelope(reference, 1.01), InvalidArgument);
}

TEST_CASE("critical root at the reference pair", "[domination][root]")
{
    const auto root = critical_root(reference);
    CHECK_THAT(root.value, WithinAbs(0.6779049274, 1e-9));
    CHECK(root.residual < 1e-14);
    CHECK(root.bracket_lo <= root.value);
    CHECK(root.value <= root.bracket_hi);
}

TEST_CASE("n = 1 has no interior root", "[domination][root][errors]")
{
    CHECK_THROWS_AS(critical_root(Params::from_decimal("0.6666714", 1)), NoInteriorRoot);
    CHECK_THROWS_AS(critical_root(Params::from_decimal("0", 10)), InvalidArgument);
    RootOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(critical_root(reference, bad), InvalidArgument);
}

TEST_CASE("root and envelope are self-consistent", "[domination][root]")
{
    const auto p = Params::from_decimal("0.5", 10);
    const auto root = critical_root(p);
    CHECK(std::abs(root_polynomial(p, root.value)) < 1e-14);
    CHECK_THAT(ratio_envelope(p, root.value), WithinAbs(1.0, 1e-12));
}

TEST_CASE("root consistency over random parameters", "[domination][root][property]")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int tested = 0;
    while (tested < 60) {
        const int n = 2 + static_cast<int>(unit(rng) * 30);
        const Params p(Rational(unit(rng) * 0.98 + 0.01), n);
        CriticalRoot root;
        try {
            root = critical_root(p);
        } catch (const NoInteriorRoot&) {
            // p'(1) > 0: h exceeds 1 just inside the unit circle, nothing to test.
            CHECK(root_polynomial_derivative(p, 1.0) >= 0.0);
            continue;
        }
        ++tested;
        INFO("a = " << p.a() << ", n = " << n);
        CHECK(root.value > 0.0);
        CHECK(root.value < 1.0);
        CHECK_THAT(ratio_envelope(p, root.value), WithinAbs(1.0, 1e-10));
    }
}

TEST_CASE("envelope stays below one between c and 1", "[domination][envelope][property]")
{
    const double c = critical_root(reference).value;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> inside(c, 1.0);
    for (int i = 0; i < 100; ++i)
        CHECK(ratio_envelope(reference, inside(rng)) <= 1.0 + 1e-12);
}

TEST_CASE("bisection halves its bracket and Newton finishes quickly", "[domination][root]")
{
    RootOptions options;
    options.tol = 1e-14;
    const auto root = critical_root(reference, options);
    REQUIRE(root.bisection_steps > 0);
    const double cell = (options.scan_hi - options.scan_lo) / options.scan_cells;
    double previous = cell;
    for (double width : root.bracket_widths) {
        CHECK_THAT(width, WithinAbs(previous / 2, 1e-15));
        previous = width;
    }
    CHECK(root.newton_steps <= 6);
}

TEST_CASE("critical radius increases with a", "[domination][root][property]")
{
    double previous = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const Params p(Rational(600 + 5 * i, 1000), 10);
        const double c = critical_root(p).value;
        CHECK(c > previous);
        previous = c;
    }
}

TEST_CASE("pole and zero radii", "[domination][radii]")
{
    const auto radii = pole_zero_radii(reference);
    CHECK(radii.pole_radius > 1.0);
    CHECK(radii.zero_radius > 1.0);
    CHECK_THAT(radii.pole_radius, WithinRel(std::pow(2.0 / 0.6666714, 0.1), 1e-15));

    const auto half = pole_zero_radii(Params::from_decimal("0.5", 2));
    CHECK_THAT(half.pole_radius, WithinRel(2.0, 1e-15));
    CHECK_THAT(half.zero_radius, WithinRel(std::sqrt(2.0), 1e-15));

    const auto near_one = pole_zero_radii(Params::from_decimal("0.999999", 3));
    CHECK(near_one.zero_radius > 1.0);
    CHECK(near_one.zero_radius < 1.000001);

    CHECK(std::isinf(pole_zero_radii(Params::from_decimal("0", 4)).pole_radius));
}

TEST_CASE("domination holds on the reference annulus", "[domination][sampling]")
{
    const double c = critical_root(reference).value;
    const auto report = verify_domination(reference, c, {256, 1024, 1e-12});
    CHECK(report.passed());
    CHECK(report.grid_max_ratio <= 1.0 + 1e-12);
    CHECK(report.boundary_identity_at_c);
    CHECK(report.boundary_identity_at_1);
    CHECK(report.radii_ok);
    CHECK(report.angular_ok);
    CHECK(report.angular_peak_offset <= report.angular_step);
    CHECK_NOTHROW(ensure_passed(report));
}

TEST_CASE("unit circle row is flat at one", "[domination][sampling]")
{
    const double a = reference.a();
    for (int j = 0; j < 1024; ++j) {
        const auto z = std::polar(1.0, 2.0 * std::numbers::pi * j / 1024);
        const double ratio = std::abs(f_value(reference, z)) / std::abs(g_value(reference, z));
        CHECK(ratio <= 1.0 + 1e-12);
        CHECK_THAT(ratio, WithinAbs(1.0, 1e-12));
    }
    CHECK_THAT(std::abs(f_value(reference, 1.0)) / std::abs(g_value(reference, 1.0)), WithinAbs(1.0, 1e-15));
    CHECK_THAT(std::abs(f_value(reference, 1.0)), WithinRel((a + 1) / (2 - a), 1e-15));
}

TEST_CASE("angular maximum sits at n theta = 0 off the unit circle", "[domination][sampling]")
{
    for (int n : {3, 7, 10, 13}) {
        const auto p = Params::from_decimal("0.6", n);
        const double r = 0.9;
        const double peak = std::abs(f_value(p, r)) / std::abs(g_value(p, r));
        CHECK_THAT(peak, WithinRel(ratio_envelope(p, r), 1e-13));
        for (int j = 1; j < 500; ++j) {
            const auto z = std::polar(r, 2.0 * std::numbers::pi * j / 500);
            CHECK(std::abs(f_value(p, z)) / std::abs(g_value(p, z)) <= peak * (1 + 1e-14));
        }
    }
    // 7 does not divide 1000, so only the theta = 0 sample hits a sector peak exactly.
    const auto p7 = Params::from_decimal("0.6", 7);
    const auto report = verify_domination(p7, critical_root(p7).value, {64, 1000, 1e-12});
    CHECK(report.angular_ok);
    CHECK(report.angular_peak_offset <= report.angular_step);
}

TEST_CASE("a = 0 with c = 1/2 passes trivially", "[domination][sampling]")
{
    const auto report = verify_domination(Params::from_decimal("0", 2), 0.5, {16, 16, 1e-12});
    CHECK(report.passed());
    CHECK_THAT(report.h_at_c, WithinAbs(0.5, 1e-15));
    CHECK_FALSE(report.boundary_identity_at_c);
}

TEST_CASE("an inner radius below c violates domination", "[domination][sampling][errors]")
{
    const auto report = verify_domination(reference, 0.5, {64, 256, 1e-12});
    CHECK(report.verdict == DominationVerdict::domination_violated);
    CHECK(report.grid_max_ratio > 1.0);
    CHECK(report.worst_r == 0.5);
    CHECK_THROWS_AS(ensure_passed(report), DominationViolated);
}

TEST_CASE("sample counts and radius are validated", "[domination][errors]")
{
    CHECK_THROWS_AS(verify_domination(reference, 0.7, {15, 1024, 1e-12}), InvalidArgument);
    CHECK_THROWS_AS(verify_domination(reference, 0.7, {256, 8, 1e-12}), InvalidArgument);
    CHECK_THROWS_AS(verify_domination(reference, 0.0, {}), InvalidArgument);
    CHECK_THROWS_AS(verify_domination(reference, 1.2, {}), InvalidArgument);
}
