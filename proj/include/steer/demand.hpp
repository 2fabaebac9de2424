#pragma once

#include "steer/search_env.hpp"

namespace steer {

struct PricePair {
    double p1 = 0.0;
    double p2 = 0.0;

    double delta() const { return p1 - p2; }  // signed price gap p1 - p2
    PricePair swapped() const { return {p2, p1}; }
};

// Rank-conditional demands D_i^n and the prominence bonus B at a price pair.
// d11 + d22 = d12 + d21 = 1 - F(p1)F(p2); d11 - d12 = d21 - d22 = bonus >= 0.
struct DemandProfile {
    double d11 = 0.0;
    double d12 = 0.0;
    double d21 = 0.0;
    double d22 = 0.0;
    double bonus = 0.0;
};

// Expected match value delivered conditional on search order, and the social
// welfare (net of search costs) when seller 1 / seller 2 is searched first.
// Uniform01 identity: sw1 - sw2 = -(p1-p2)^3 / 3.
struct SocialValues {
    double v11 = 0.0;  // value sold by the first-ranked seller (seller 1 first)
    double v22 = 0.0;  // value sold by the second-ranked seller (seller 1 first)
    double sw1 = 0.0;
    double sw2 = 0.0;
};

enum class StoppingDecision { BuyNow, Continue, NeverBuyFirst };

// True on the closed nondegenerate region max(p1,p2) <= A, |p1-p2| <= 1-A,
// where the plain demand formulas apply. Outside it, route to the corner
// module.
bool in_plain_region(const SearchEnv& env, const PricePair& prices);

// The four rank-conditional demands and the bonus. Uniform01 uses the
// polynomial closed forms; General integrates the stopping-rule regions by
// adaptive quadrature. Throws DomainError outside the nondegenerate region.
DemandProfile demand_profile(const SearchEnv& env, const PricePair& prices);

// Consumer decision at the first-inspected seller given its match draw.
// NeverBuyFirst when the draw cannot beat the price; BuyNow when it beats
// the reservation level A - p_second (strictly; ties continue).
StoppingDecision stopping_decision(const SearchEnv& env, const PricePair& prices,
                                   int first, double u_first);

// Social values and welfare for both search orders. Same domain guard as
// demand_profile.
SocialValues social_values(const SearchEnv& env, const PricePair& prices);

// Low-level rank demands, uniform closed forms extended to all of [0,1]^2
// with the distribution clamped at the support edges. These cover the corner
// regime: a second-ranked seller priced above A sells nothing, and a
// first-ranked seller facing a rival priced above A is a monopolist on
// u > own. Used by the IC layer, equilibrium verification, and the corner
// module; demand_profile is the guarded spec surface.
double first_rank_demand(const SearchEnv& env, double own, double other);
double second_rank_demand(const SearchEnv& env, double own, double other);

}  // namespace steer
