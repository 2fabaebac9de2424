#pragma once

#include <string>
#include <vector>

#include "steer/feasible_set.hpp"

namespace steer {

// Which prices weakly exceed the reservation threshold. p = A belongs to
// the above regime (the formulas disagree only on that measure-zero line).
enum class CornerRegime { BothBelow, P1Above, P2Above, BothAbove };

CornerRegime classify_corner(const SearchEnv& env, const PricePair& prices);
const char* to_string(CornerRegime regime);

// Profit of a seller ranked first whose rival is priced out of the search:
// p (1 - F(p)), i.e. p(1-p) under Uniform01.
double monopoly_first_profit(const SearchEnv& env, double p);

// Implementable search orders under the modified IC constraints for price
// pairs at or above A. Throws WrongRegime when both prices are below A
// (the plain interval applies there).
AlphaInterval corner_alpha_interval(const SearchEnv& env, const PricePair& prices);

// Membership in the corner-adjusted set: delegates to the plain set below
// A, otherwise tests the regime-appropriate interval for emptiness.
bool hat_contains(const SearchEnv& env, const PricePair& prices);

struct CornerSweepRow {
    PricePair prices;
    bool in_plain = false;
    bool in_hat = false;
    CornerRegime regime = CornerRegime::BothBelow;
};

// Uniform n x n lattice over the open unit square, classifying every point
// against both sets. in_hat implies in_plain everywhere.
std::vector<CornerSweepRow> corner_sweep(const SearchEnv& env, int n);

// CSV columns: p1,p2,in_plain,in_hat,regime.
std::string corner_sweep_to_csv(const std::vector<CornerSweepRow>& rows);
std::vector<CornerSweepRow> corner_sweep_from_csv(const std::string& csv);

}  // namespace steer
