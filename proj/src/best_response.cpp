#include "steer/best_response.hpp"

#include <cmath>

#include "steer/errors.hpp"

namespace steer {
namespace {

void check_uniform(const SearchEnv& env, double rival_price) {
    if (!env.uniform())
        throw DomainError("best deviation closed form requires Uniform01");
    if (!(rival_price >= 0.0 && rival_price <= 1.0))
        throw DomainError("rival price outside [0,1]");
}

}  // namespace

double deviation_profit(const SearchEnv& env, double own, double rival) {
    const double a = env.threshold;
    // Rank-two demand at own price x against a first-ranked rival at r,
    // on the branch the deviation FOC lives on (x <= A).
    const double d2 = -0.5 * a * a + 0.5 * own * own - rival * own + a + rival - own;
    return own * d2;
}

Deviation best_deviation(const SearchEnv& env, double rival_price) {
    check_uniform(env, rival_price);
    const double a = env.threshold;
    const double r = rival_price;
    const double b = 2.0 + 2.0 * r;
    const double c = r + a - 0.5 * a * a;
    const double disc = b * b - 6.0 * c;
    if (disc < 0.0)
        throw NoInteriorMaximum("best_deviation: FOC discriminant negative");
    const double x = (b - std::sqrt(disc)) / 3.0;  // lower root only
    // Second-order condition at the root: profit locally concave.
    const double h = 1e-6;
    const double second = deviation_profit(env, x + h, r) -
                          2.0 * deviation_profit(env, x, r) +
                          deviation_profit(env, x - h, r);
    if (second > 0.0)
        throw NoInteriorMaximum("best_deviation: second-order condition failed");
    return {x, deviation_profit(env, x, r)};
}

Deviation brute_force_best_deviation(const SearchEnv& env, double rival_price,
                                     long grid_n) {
    check_uniform(env, rival_price);
    if (grid_n < 1000)
        throw DomainError("brute_force_best_deviation: grid_n must be >= 1000");
    const double a = env.threshold;
    Deviation best{0.0, 0.0};
    for (long k = 0; k < grid_n; ++k) {
        const double p = a * static_cast<double>(k) / static_cast<double>(grid_n - 1);
        const double profit = deviation_profit(env, p, rival_price);
        if (profit > best.profit) best = {p, profit};  // ties keep the smaller price
    }
    return best;
}

}  // namespace steer
