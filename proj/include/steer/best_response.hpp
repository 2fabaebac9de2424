#pragma once

#include "steer/demand.hpp"
#include "steer/search_env.hpp"

namespace steer {

// A seller's optimal rank-two deviation against a fixed rival price:
// argmax and value of p * D^2(p, rival). price < 1/2 under Uniform01.
struct Deviation {
    double price = 0.0;
    double profit = 0.0;
};

// Rank-two profit of a deviating seller priced at `own` against a
// first-ranked rival priced at `rival` (uniform closed form).
double deviation_profit(const SearchEnv& env, double own, double rival);

// Closed-form best deviation under Uniform01: the lower root of
//   (3/2)x^2 - (2+2r)x + (r + A - A^2/2) = 0,
// with the second-order condition checked numerically. Throws
// NoInteriorMaximum when the discriminant is negative.
Deviation best_deviation(const SearchEnv& env, double rival_price);

// Exhaustive argmax of p * D^2(p, rival) over a uniform grid on [0, A].
// Ties break toward the smaller price. Verification oracle for
// best_deviation; grid_n >= 1000.
Deviation brute_force_best_deviation(const SearchEnv& env, double rival_price,
                                     long grid_n);

}  // namespace steer
