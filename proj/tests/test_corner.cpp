#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "steer/corner.hpp"
#include "steer/errors.hpp"

using namespace steer;

TEST_CASE("monopoly first-rank profit") {
    const SearchEnv env = SearchEnv::from_threshold(0.65);
    CHECK(monopoly_first_profit(env, 0.0) == 0.0);
    CHECK(monopoly_first_profit(env, 1.0) == 0.0);
    CHECK(monopoly_first_profit(env, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    // Grid oracle: the vertex of p(1-p).
    double best_p = 0.0, best_v = -1.0;
    for (int k = 0; k <= 100000; ++k) {
        const double p = k / 100000.0;
        const double v = monopoly_first_profit(env, p);
        if (v > best_v) {
            best_v = v;
            best_p = p;
        }
    }
    CHECK(std::abs(best_p - 0.5) < 1e-4);
    CHECK(std::abs(best_v - 0.25) < 1e-9);
}

TEST_CASE("regime classification puts p = A in the above branch") {
    const SearchEnv env = SearchEnv::from_threshold(0.65);
    CHECK(classify_corner(env, {0.3, 0.3}) == CornerRegime::BothBelow);
    CHECK(classify_corner(env, {0.65, 0.3}) == CornerRegime::P1Above);
    CHECK(classify_corner(env, {0.3, 0.65}) == CornerRegime::P2Above);
    CHECK(classify_corner(env, {0.7, 0.66}) == CornerRegime::BothAbove);
    CHECK_THROWS_AS(corner_alpha_interval(env, {0.3, 0.3}), WrongRegime);
}

TEST_CASE("symmetric both-above pair has mirrored bounds") {
    // Large search costs open up the both-above region: at A = 0.3 the pair
    // (0.5, 0.5) is implementable under the double-primed constraints.
    const SearchEnv deep = SearchEnv::from_threshold(0.3);
    const AlphaInterval iv = corner_alpha_interval(deep, {0.5, 0.5});
    REQUIRE(!iv.empty);
    CHECK(std::abs(iv.lo - (1.0 - iv.hi)) < 1e-12);
    CHECK(iv.lo < 0.5);

    // One-above mirrored pairs swap the interval.
    const SearchEnv env = SearchEnv::from_threshold(0.5);
    const AlphaInterval ab = corner_alpha_interval(env, {0.6, 0.4});
    const AlphaInterval ba = corner_alpha_interval(env, {0.4, 0.6});
    REQUIRE(!ab.empty);
    REQUIRE(!ba.empty);
    CHECK(std::abs(ab.lo - (1.0 - ba.hi)) < 1e-12);
    CHECK(std::abs(ab.hi - (1.0 - ba.lo)) < 1e-12);
}

TEST_CASE("alpha = 1 implements boundary points of P above the threshold") {
    // On the alpha = 1 arc of P, seller 2 plays its deviation best response;
    // pick the point with p1 just above A and verify the hat constraints.
    const SearchEnv env = SearchEnv::from_threshold(0.65);
    for (double p1 : {0.65, 0.66}) {
        const double p2 = best_deviation(env, p1).price;
        const PricePair p{p1, p2};
        REQUIRE(contains(env, p));
        REQUIRE(classify_corner(env, p) == CornerRegime::P1Above);
        const AlphaInterval hat = corner_alpha_interval(env, p);
        REQUIRE(!hat.empty);
        CHECK(hat.hi >= 1.0 - 1e-9);  // alpha = 1 satisfies both hat ICs
        CHECK(hat.contains(1.0) == (hat.hi >= 1.0));
        CHECK(hat_contains(env, p));
    }
}

TEST_CASE("corner interval nests inside the plain interval at p1 = A") {
    const SearchEnv env = SearchEnv::from_threshold(0.65);
    // Points where both conventions are defined: p1 exactly at the threshold.
    for (double p2 : {0.35, 0.404179, 0.45}) {
        const PricePair p{0.65, p2};
        const AlphaInterval plain = alpha_interval(env, p);
        const AlphaInterval hat = corner_alpha_interval(env, p);
        if (hat.empty) continue;  // nothing to nest
        REQUIRE(!plain.empty);
        CHECK(hat.lo >= plain.lo - 1e-9);
        CHECK(hat.hi <= plain.hi + 1e-9);
    }
    // The alpha = 1 construction gives a nonempty pair at p2 = best response.
    const double p2 = best_deviation(env, 0.65).price;
    const AlphaInterval hat = corner_alpha_interval(env, {0.65, p2});
    CHECK(!hat.empty);
}

TEST_CASE("hat membership is a subset of plain membership") {
    for (double a : {0.5, 0.65}) {
        const SearchEnv env = SearchEnv::from_threshold(a);
        const auto rows = corner_sweep(env, 100);
        REQUIRE(rows.size() == 10000);
        long violations = 0;
        long hat_corner_points = 0;
        for (const auto& row : rows) {
            if (row.in_hat && !row.in_plain) ++violations;
            if (row.in_hat && row.regime != CornerRegime::BothBelow)
                ++hat_corner_points;
        }
        CHECK(violations == 0);
        // The sweep is informative: P extends past the p = A lines here.
        CHECK(hat_corner_points > 0);
    }
}

TEST_CASE("relative position of P and the threshold lines across regimes") {
    // Three qualitative positions as the threshold falls: at A = 0.7 the set
    // sits strictly below both lines; at A = 0.65 it crosses them; at
    // A = 0.5 it reaches past both on each side.
    auto crossing_stats = [](double a) {
        const SearchEnv env = SearchEnv::from_threshold(a);
        long plain_above = 0, hat_above = 0;
        for (const CornerSweepRow& row : corner_sweep(env, 80)) {
            if (row.regime == CornerRegime::BothBelow) continue;
            plain_above += row.in_plain;
            hat_above += row.in_hat;
        }
        return std::pair<long, long>{plain_above, hat_above};
    };

    const auto [plain_07, hat_07] = crossing_stats(0.7);
    CHECK(plain_07 == 0);
    CHECK(hat_07 == 0);

    const auto [plain_065, hat_065] = crossing_stats(0.65);
    CHECK(plain_065 > 0);
    CHECK(hat_065 > 0);
    CHECK(hat_065 <= plain_065);

    const auto [plain_05, hat_05] = crossing_stats(0.5);
    CHECK(plain_05 > plain_065);
    CHECK(hat_05 > 0);
}

TEST_CASE("below the threshold hat membership delegates to the plain set") {
    const SearchEnv env = SearchEnv::from_threshold(0.65);
    CHECK(hat_contains(env, {0.4, 0.4}) == contains(env, {0.4, 0.4}));
    CHECK(hat_contains(env, {0.1, 0.1}) == contains(env, {0.1, 0.1}));
}

TEST_CASE("corner sweep CSV round trip") {
    const SearchEnv env = SearchEnv::from_threshold(0.5);
    const auto rows = corner_sweep(env, 20);
    const std::string csv = corner_sweep_to_csv(rows);
    const auto back = corner_sweep_from_csv(csv);
    REQUIRE(back.size() == rows.size());
    CHECK(corner_sweep_to_csv(back) == csv);
}
