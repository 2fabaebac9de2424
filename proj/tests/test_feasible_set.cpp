#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "steer/errors.hpp"
#include "steer/feasible_set.hpp"
#include "steer/rng.hpp"

using namespace steer;

namespace {

// Independent diagonal-root oracle: sign scan of H(p,p) on a dense grid.
std::pair<double, double> diagonal_roots_oracle(const SearchEnv& env, int grid) {
    auto h_diag = [&](double p) { return h_value(env, {p, p}); };
    double lo = 0.0, hi = 0.0;
    bool found = false;
    double prev_p = 1e-4;
    double prev_h = h_diag(prev_p);
    for (int i = 1; i <= grid; ++i) {
        const double p = 1e-4 + (1.0 - 2e-4) * i / grid;
        const double h = h_diag(p);
        if ((prev_h > 0) != (h > 0)) {
            if (!found) {
                lo = 0.5 * (prev_p + p);
                found = true;
            }
            hi = 0.5 * (prev_p + p);
        }
        prev_p = p;
        prev_h = h;
    }
    REQUIRE(found);
    return {lo, hi};
}

double hausdorff(const std::vector<PricePair>& a, const std::vector<PricePair>& b) {
    auto one_sided = [](const std::vector<PricePair>& from,
                        const std::vector<PricePair>& to) {
        double worst = 0.0;
        for (const PricePair& p : from) {
            double best = 1e300;
            for (const PricePair& q : to)
                best = std::min(best, std::hypot(p.p1 - q.p1, p.p2 - q.p2));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

PricePair sample_in_p(Xoshiro256& rng, const SearchEnv& env) {
    for (;;) {
        const PricePair p{rng.uniform(), rng.uniform()};
        if (contains(env, p)) return p;
    }
}

}  // namespace

TEST_CASE("H is symmetric and matches a brute-force assembly") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    Xoshiro256 rng(3);
    for (int i = 0; i < 50; ++i) {
        const PricePair p{rng.uniform(), rng.uniform()};
        CHECK(h_value(env, p) == doctest::Approx(h_value(env, p.swapped())).epsilon(1e-14));
    }
    // Oracle: H rebuilt from brute-force deviation maxima.
    const PricePair p{0.3, 0.3};
    const double m1 = brute_force_best_deviation(env, 0.3, 200000).profit;
    const double h_oracle = 2.0 * 0.3 * m1 + std::pow(0.3, 4) - 0.09;
    CHECK(std::abs(h_value(env, p) - h_oracle) < 1e-6);
    CHECK(h_value(env, p) < 0.0);
}

TEST_CASE("alpha interval at (0.3, 0.3) with A = 0.7") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    const AlphaInterval iv = alpha_interval(env, {0.3, 0.3});
    REQUIRE(!iv.empty);
    // Derived: (max pi^2 - 0.123) / (0.3 * 0.09), hi mirrored by symmetry.
    const double m = brute_force_best_deviation(env, 0.3, 1000000).profit;
    const double lo_oracle = (m - 0.123) / (0.3 * 0.09);
    CHECK(std::abs(iv.lo - lo_oracle) < 1e-5);
    CHECK(iv.lo == doctest::Approx(0.1373).epsilon(2e-3));
    CHECK(std::abs(iv.hi - (1.0 - iv.lo)) < 1e-12);
}

TEST_CASE("interval width identity: hi - lo = -H / (p1 p2 B)") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    Xoshiro256 rng(5);
    int inside = 0;
    while (inside < 100) {
        const PricePair p{0.05 + 0.6 * rng.uniform(), 0.05 + 0.6 * rng.uniform()};
        const AlphaInterval iv = alpha_interval(env, p);
        const double h = h_value(env, p);
        const double bonus = 0.09 - 0.5 * p.delta() * p.delta();
        if (iv.empty) {
            CHECK(h > 0.0);
            continue;
        }
        ++inside;
        CHECK(h <= kMembershipTol);
        if (iv.lo > 0.0 && iv.hi < 1.0)
            CHECK(std::abs((iv.hi - iv.lo) + h / (p.p1 * p.p2 * bonus)) < 1e-12);
    }
}

TEST_CASE("contains agrees with the H sign and swaps cleanly") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    CHECK(contains(env, {0.3, 0.3}));
    const DiagonalRoots roots = diagonal_roots(env);
    CHECK(!contains(env, {roots.high + 0.05, roots.high + 0.05}));
    Xoshiro256 rng(9);
    for (int i = 0; i < 200; ++i) {
        const PricePair p{rng.uniform(), rng.uniform()};
        CHECK(contains(env, p) == contains(env, p.swapped()));
        CHECK(contains(env, p) == (h_value(env, p) <= kMembershipTol));
    }
}

TEST_CASE("membership restated as total virtual demand vs total demand") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    Xoshiro256 rng(15);
    for (int i = 0; i < 300; ++i) {
        const PricePair p{0.05 + 0.9 * rng.uniform(), 0.05 + 0.9 * rng.uniform()};
        const double virt1 = best_deviation(env, p.p2).profit / p.p1;
        const double virt2 = best_deviation(env, p.p1).profit / p.p2;
        const double slack = virt1 + virt2 - (1.0 - p.p1 * p.p2);
        const bool virtual_ok = slack <= kMembershipTol / (p.p1 * p.p2);
        CHECK(contains(env, p) == virtual_ok);
    }
}

TEST_CASE("diagonal roots against the sign-scan oracle") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    const DiagonalRoots roots = diagonal_roots(env);
    const auto [lo_oracle, hi_oracle] = diagonal_roots_oracle(env, 10000);
    CHECK(std::abs(roots.low - lo_oracle) < 5e-3);
    CHECK(std::abs(roots.high - hi_oracle) < 5e-3);
    CHECK(std::abs(roots.low - 0.2385) < 5e-3);
    CHECK(std::abs(roots.high - 0.577) < 5e-3);
    CHECK(roots.low < roots.high);
    CHECK(std::abs(h_value(env, {roots.low, roots.low})) < 1e-9);
    CHECK(std::abs(h_value(env, {roots.high, roots.high})) < 1e-9);
    const double mid = 0.5 * (roots.low + roots.high);
    CHECK(h_value(env, {mid, mid}) < 0.0);

    // Both roots carry the singleton interval {1/2}.
    for (double r : {roots.low, roots.high}) {
        const AlphaInterval iv = alpha_interval(env, {r, r});
        REQUIRE(!iv.empty);
        CHECK(std::abs(iv.lo - 0.5) < 1e-6);
        CHECK(std::abs(iv.hi - 0.5) < 1e-6);
        CHECK(iv.singleton(1e-6));
    }
}

TEST_CASE("binding equivalence at the boundary") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    const DiagonalRoots roots = diagonal_roots(env);
    const PricePair pb{roots.high, roots.high};
    // Virtual demand equals actual demand at the binding point.
    const double virtual1 = best_deviation(env, pb.p2).profit / pb.p1;
    const AlphaInterval iv = alpha_interval(env, pb);
    const double actual1 =
        second_rank_demand(env, pb.p1, pb.p2) +
        iv.mid() * (0.09 - 0.5 * pb.delta() * pb.delta());
    CHECK(std::abs(virtual1 - actual1) < 1e-6);
}

TEST_CASE("boundary trace: residuals, symmetry, convexity, extremes") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    const BoundaryCurve curve = trace_boundary(env, 128);
    REQUIRE(curve.points.size() == 128);

    for (const PricePair& p : curve.points)
        CHECK(std::abs(h_value(env, p)) <= 1e-9);

    std::vector<PricePair> reflected;
    for (const PricePair& p : curve.points) reflected.push_back(p.swapped());
    CHECK(hausdorff(curve.points, reflected) <= 1e-8);

    Xoshiro256 rng(23);
    for (int i = 0; i < 200; ++i) {
        const auto& a = curve.points[rng.next() % curve.points.size()];
        const auto& b = curve.points[rng.next() % curve.points.size()];
        CHECK(contains(env, {0.5 * (a.p1 + b.p1), 0.5 * (a.p2 + b.p2)}));
    }

    for (const PricePair& p : curve.points) {
        CHECK(curve.m_left.p1 <= p.p1 + 1e-9);
        CHECK(curve.m_right.p1 >= p.p1 - 1e-9);
        CHECK(curve.m_low.p2 <= p.p2 + 1e-9);
        CHECK(curve.m_high.p2 >= p.p2 - 1e-9);
    }
    CHECK(curve.p_low_diag < curve.p_high_diag);
    CHECK(std::abs(curve.p_low_diag - 0.2385) < 5e-3);
    CHECK(std::abs(curve.p_high_diag - 0.577) < 5e-3);

    CHECK_THROWS_AS(trace_boundary(env, 32), DomainError);
}

TEST_CASE("nesting of P across search costs") {
    const SearchEnv small = SearchEnv::from_cost(0.02);
    const SearchEnv large = SearchEnv::from_cost(0.045);
    const NestingReport report = nesting_check(small, large, 1000);
    CHECK(report.samples_checked == 1000);
    CHECK(report.violations.empty());

    const NestingReport self = nesting_check(small, small, 200);
    CHECK(self.violations.empty());

    // Boundary points of the smaller set sit strictly inside the larger one.
    const BoundaryCurve curve = trace_boundary(small, 64);
    for (const PricePair& p : curve.points) CHECK(h_value(large, p) < -1e-4);

    CHECK_THROWS_AS(nesting_check(large, small, 10), DomainError);
}

TEST_CASE("H is locally Lipschitz and membership is boundary-inclusive") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    Xoshiro256 rng(31);
    for (int i = 0; i < 200; ++i) {
        const PricePair p{0.05 + 0.9 * rng.uniform(), 0.05 + 0.9 * rng.uniform()};
        const double eps = 1e-6 * (1.0 + rng.uniform());
        const PricePair q{std::min(1.0, p.p1 + eps), std::min(1.0, p.p2 - eps)};
        const double dist = std::hypot(q.p1 - p.p1, q.p2 - p.p2);
        CHECK(std::abs(h_value(env, q) - h_value(env, p)) <= 10.0 * dist + 1e-15);
    }
    // A sampled sequence converging to a traced boundary point stays in P
    // and its limit is still counted inside (closedness proxy).
    const BoundaryCurve curve = trace_boundary(env, 64);
    const PricePair target = curve.points[7];
    const PricePair anchor{0.5 * (curve.p_low_diag + curve.p_high_diag),
                           0.5 * (curve.p_low_diag + curve.p_high_diag)};
    for (double t : {0.5, 0.9, 0.99, 0.999, 1.0}) {
        const PricePair p{anchor.p1 + t * (target.p1 - anchor.p1),
                          anchor.p2 + t * (target.p2 - anchor.p2)};
        CHECK(contains(env, p));
    }
}

TEST_CASE("degenerate regimes raise the documented errors") {
    CHECK_THROWS_AS(alpha_interval(SearchEnv::from_cost(0.0), {0.3, 0.3}),
                    DegenerateBonus);
    CHECK_THROWS_AS(diagonal_roots(SearchEnv::from_cost(0.0)), DegenerateBonus);
}

TEST_CASE("P shrinks toward the random-search point but never empties") {
    // The symmetric random-search equilibrium price sqrt(2)-1 stays
    // implementable at any positive search cost, so the diagonal roots
    // bracket it even as s -> 0.
    const double anchor = std::sqrt(2.0) - 1.0;
    for (double s : {1e-8, 1e-5, 0.02, 0.125}) {
        const DiagonalRoots roots = diagonal_roots(SearchEnv::from_cost(s));
        CHECK(roots.low < anchor);
        CHECK(roots.high > anchor);
    }
    const DiagonalRoots tiny = diagonal_roots(SearchEnv::from_cost(1e-8));
    CHECK(tiny.high - tiny.low < 2e-3);
}

TEST_CASE("boundary CSV round trip") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    const BoundaryCurve curve = trace_boundary(env, 64);
    const std::string csv = boundary_to_csv(curve);
    const BoundaryCurve back = boundary_from_csv(csv);
    REQUIRE(back.points.size() == curve.points.size());
    CHECK(boundary_to_csv(back) == csv);
}

TEST_CASE("random in-P samples have nonempty intervals containing the midpoint") {
    const SearchEnv env = SearchEnv::from_threshold(0.7);
    Xoshiro256 rng(37);
    for (int i = 0; i < 100; ++i) {
        const PricePair p = sample_in_p(rng, env);
        const AlphaInterval iv = alpha_interval(env, p);
        REQUIRE(!iv.empty);
        CHECK(iv.lo >= 0.0);
        CHECK(iv.hi <= 1.0);
        CHECK(iv.contains(iv.mid()));
    }
}
