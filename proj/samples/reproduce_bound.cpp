// Walks through the reference pair (a, n) = (0.6666714, 10) with the library API.

#include <iomanip>
#include <iostream>

#include "korenblum/korenblum.hpp"

int main()
{
    using namespace korenblum;

    const auto params = reference_params();
    const auto root = critical_root(params);
    std::cout << std::setprecision(12) << "c          = " << root.value << "\n";
    std::cout << "h(c), h(1) = " << ratio_envelope(params, root.value) << ", "
              << ratio_envelope<Rational>(params, Rational(1)) << "\n";

    const auto domination = verify_domination(params, root.value);
    std::cout << "domination = " << to_string(domination.verdict) << " (max |f/g| = " << std::setprecision(17)
              << domination.grid_max_ratio << ")\n";

    const auto delta = norm_difference<Rational>(params);
    std::cout << "Delta      >= " << to_decimal_string(delta.delta_lower, 20) << " (exact, K = "
              << delta.truncation_index << ")\n";
    return delta.positive() && domination.passed() ? 0 : 1;
}
