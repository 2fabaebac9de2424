#pragma once

#include <string>

#include "steer/feasible_set.hpp"

namespace steer {

// A platform recommendation: prices plus the on-path probability that
// seller 1 is ranked first. Feasible iff (p1,p2) is in P and alpha lies in
// the implementable interval at those prices.
struct Contract {
    double p1 = 0.0;
    double p2 = 0.0;
    double alpha = 0.5;
};

enum class Objective { Profit, TradeProb, Welfare, ConsumerSurplus };
enum class Direction { Max, Min };

struct ObjectiveValues {
    double profit1 = 0.0;
    double profit2 = 0.0;
    double profit = 0.0;      // profit1 + profit2
    double trade_prob = 0.0;  // 1 - F(p1)F(p2)
    double sw = 0.0;          // alpha*SW1 + (1-alpha)*SW2
    double cs = 0.0;          // sw - profit
};

enum class Regime { SymmetricDiagonal, AsymmetricBoundary, Interior, UnconstrainedFirstBest };

struct SolveResult {
    Contract contract;
    double value = 0.0;
    Regime regime = Regime::Interior;
    std::string binding;          // "ic1", "ic2", "ic1+ic2", or "none"
    int certificate_resolution = 0;
    bool domain_restricted = false;  // price cap p <= A clipped the optimum
    bool has_mirror = false;
    Contract mirror;              // the swapped optimum when asymmetric
};

struct AttainabilityReport {
    double first_best_value = 0.0;
    double constrained_value = 0.0;
    double gap = 0.0;  // first best minus constrained optimum
    bool strict = false;
};

struct CriticalThreshold {
    double s_star = 0.0;
    double a_star = 0.0;
    double p_bar = 0.0;  // upper diagonal root at s_star
};

// Objective values at a contract. Feasibility is not required; used for
// exploration as well as reporting.
ObjectiveValues contract_values(const SearchEnv& env, const Contract& c);

// Optimal traffic split at fixed implementable prices: the interval
// endpoint selected by the sign of p1 - p2 (profit and welfare pull in
// opposite directions); 1/2 when prices are equal. Throws Infeasible when
// the interval is empty.
double optimal_alpha(const SearchEnv& env, const PricePair& prices,
                     Objective objective, Direction direction);

// Unconstrained joint-profit optimum of the integrated (multiproduct)
// platform: solves the ordered-search first-order system, p1*p2 = 1/3 with
// the remaining root bracketed on (0.1, sqrt(3)/3]. Reports the mirrored
// optimum as well.
SolveResult first_best(const SearchEnv& env);

// Constrained optimal contract for an objective/direction. Two-stage
// scheme: the inner alpha is the better interval endpoint (objectives are
// linear in alpha), the outer price search combines a diagonal scan, a
// boundary-arc scan, and multi-start coordinate refinement, certified
// against a full grid of at least grid_n x grid_n cells over the bounding
// box of P intersected with the nondegenerate price region.
SolveResult solve(const SearchEnv& env, Objective objective, Direction direction,
                  int grid_n = 400);

// Search cost s* at which the upper diagonal root equals the uniform-price
// optimum sqrt(3)/3; bisected to 1e-8 on [s_lo, s_hi]. Throws NoBracket
// when p_bar - sqrt(3)/3 does not change sign on the range.
CriticalThreshold critical_threshold(double s_lo, double s_hi);

// Checks that the unconstrained first best strictly beats the constrained
// seller optimum.
AttainabilityReport first_best_attainability_check(const SearchEnv& env);

const char* to_string(Regime regime);
const char* to_string(Objective objective);
const char* to_string(Direction direction);
Objective objective_from_string(const std::string& name);
Direction direction_from_string(const std::string& name);

}  // namespace steer
