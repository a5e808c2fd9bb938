#include <cmath>

#include "doctest.h"
#include "resgap/bound.hpp"
#include "resgap/errors.hpp"
#include "resgap/quadrature.hpp"

using namespace resgap;

namespace {

const WeightPolynomial kPaperWeight({1.0, -0.7});

}  // namespace

TEST_CASE("weight polynomial evaluation") {
    WeightPolynomial f({2.0, -1.0, 0.5});
    CHECK(f(0.0) == 2.0);
    CHECK(f(1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(f(0.5) == doctest::Approx(2.0 - 0.5 + 0.125).epsilon(1e-15));
    CHECK(f.degree() == 2);
}

TEST_CASE("I_f closed form") {
    // f == 1: I_f = 1/ell^2
    CHECK(eval_I_f(WeightPolynomial({1.0}), 1.3) ==
          doctest::Approx(1.0 / 1.69).epsilon(1e-14));
    // frozen reference value for the ell = 1.15, f = 1 - 0.7x configuration
    CHECK(eval_I_f(kPaperWeight, 1.15) ==
          doctest::Approx(0.30082426675849239).epsilon(1e-14));
    CHECK_THROWS_AS(eval_I_f(WeightPolynomial({0.0, 0.0}), 1.2),
                    DegenerateWeightError);
}

TEST_CASE("I_f closed form agrees with direct quadrature") {
    for (double ell : {1.0, 1.15, 1.6}) {
        const double closed = eval_I_f(kPaperWeight, ell);
        auto q = inner_weighted_integral(
            [](double u) {
                const double y = 1.0 - 0.7 * u;
                return y * y;
            },
            1.0, ell, 1e-12);
        CHECK(closed == doctest::Approx(q.value).epsilon(1e-10));
    }
}

TEST_CASE("functional terms at the certified point") {
    BoundParams p{0.508949, 1.15, kPaperWeight};
    auto r = eval_M(p, 1e-9);
    // frozen references computed independently before the build
    CHECK(r.term1 == doctest::Approx(0.002465960079236015).epsilon(1e-8));
    CHECK(r.term2 == doctest::Approx(0.047527921767416978).epsilon(1e-8));
    CHECK(r.term3 == doctest::Approx(0.025192567195215464).epsilon(1e-8));
    CHECK(r.m_total ==
          doctest::Approx(r.term1 + r.term2 + r.term3).epsilon(1e-14));
    CHECK(r.quad_error < 1e-8);
    CHECK(r.evaluations > 0);
}

TEST_CASE("gap bound at the certified point is positive with margin") {
    BoundParams p{0.508949, 1.15, kPaperWeight};
    auto r = gap_lower_bound(p, 1e-9);
    CHECK(r.g_value ==
          doctest::Approx(1.4871618131212516e-05).epsilon(5e-4));
    CHECK(r.g_value >= 1e-5);
    CHECK(certified_positive(r));
}

TEST_CASE("gap bound frozen references away from the boundary") {
    auto r1 = gap_lower_bound({0.3, 1.0, WeightPolynomial({1.0})}, 1e-9);
    CHECK(r1.g_value ==
          doctest::Approx(-0.0071768108755944637).epsilon(1e-6));
    CHECK(!certified_positive(r1));

    // phi = 1/2 makes the first term vanish (pref = |1 - 2 phi| = 0)
    auto r2 = gap_lower_bound({0.5, 1.15, kPaperWeight}, 1e-9);
    CHECK(r2.term1 == 0.0);
    CHECK(r2.g_value ==
          doctest::Approx(-0.01562821553310062).epsilon(1e-6));
}

TEST_CASE("g_value is increasing across the certified point") {
    // positivity at phi* must come from a sign change, not a plateau
    double prev = -1e300;
    for (double phi : {0.505, 0.508, 0.509, 0.512}) {
        auto r = gap_lower_bound({phi, 1.15, kPaperWeight}, 1e-8);
        CHECK(r.g_value > prev);
        prev = r.g_value;
    }
}

TEST_CASE("tightening the tolerance tightens the reported error") {
    BoundParams p{0.508949, 1.15, kPaperWeight};
    auto coarse = eval_M(p, 1e-6);
    auto fine = eval_M(p, 1e-9);
    CHECK(fine.quad_error <= coarse.quad_error);
    CHECK(std::abs(fine.m_total - coarse.m_total) <
          10.0 * (coarse.quad_error + fine.quad_error) + 1e-12);
    CHECK(fine.evaluations > coarse.evaluations);
}

TEST_CASE("minimize_phi reproduces the paper crossing") {
    auto r = minimize_phi(1.15, kPaperWeight, 0.50, 0.52, 2e-3, 1e-7, 1e-8);
    REQUIRE(r.found);
    CHECK(r.phi_star == doctest::Approx(0.508940620682).epsilon(1e-5));
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-7 * 1.0001);
    CHECK(r.bracket_lo <= r.phi_star);
    CHECK(r.phi_star <= r.bracket_hi);
    CHECK(r.g_evaluations > 0);
}

TEST_CASE("minimize_phi for the flat weight at ell = 1") {
    auto r = minimize_phi(1.0, WeightPolynomial({1.0}), 0.50, 0.53, 2e-3, 1e-6,
                          1e-8);
    REQUIRE(r.found);
    CHECK(r.phi_star == doctest::Approx(0.517538762265).epsilon(1e-4));
}

TEST_CASE("minimize_phi reports absence of a crossing") {
    // g stays negative well left of the crossing
    auto r = minimize_phi(1.15, kPaperWeight, 0.30, 0.40, 0.02, 1e-5, 1e-7);
    CHECK(!r.found);
}

TEST_CASE("minimize_phi is thread-count invariant") {
    auto r1 = minimize_phi(1.15, kPaperWeight, 0.50, 0.52, 2e-3, 1e-6, 1e-7, 1);
    auto r4 = minimize_phi(1.15, kPaperWeight, 0.50, 0.52, 2e-3, 1e-6, 1e-7, 4);
    REQUIRE(r1.found);
    REQUIRE(r4.found);
    CHECK(r1.phi_star == doctest::Approx(r4.phi_star).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(gap_lower_bound({0.5, 0.0, kPaperWeight}, 1e-8),
                    PreconditionError);
    CHECK_THROWS_AS(gap_lower_bound({-0.1, 1.15, kPaperWeight}, 1e-8),
                    PreconditionError);
    CHECK_THROWS_AS(
        gap_lower_bound({0.5, 1.15, WeightPolynomial(std::vector<double>{})},
                        1e-8),
        DegenerateWeightError);
    CHECK_THROWS_AS(minimize_phi(1.15, kPaperWeight, 0.52, 0.50, 1e-3, 1e-6,
                                 1e-7),
                    PreconditionError);
}
