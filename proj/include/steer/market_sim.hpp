#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "steer/objectives.hpp"

namespace steer {

// A committed map from posted prices to the probability seller 1 is
// inspected first. Contract rules return alpha* on path, demote a lone
// deviator to rank two, and use off_path_alpha for double deviations
// (inconsequential for unilateral analysis).
struct SearchAlgorithm {
    enum class Kind { Prominence, Random, PriceDirected, ContractRule, Custom };

    Kind kind = Kind::Random;
    int favored = 1;                // Prominence: seller always ranked first
    double tie_alpha = 0.5;         // PriceDirected: split at equal prices
    Contract contract;              // ContractRule
    double off_path_alpha = 0.5;    // ContractRule: double deviations
    std::function<double(double, double)> custom;

    double alpha(double p1, double p2) const;

    static SearchAlgorithm prominence(int seller);
    static SearchAlgorithm random();
    static SearchAlgorithm price_directed(double tie_alpha = 0.5);
    static SearchAlgorithm contract_rule(const Contract& c, double off_path = 0.5);
    static SearchAlgorithm custom_rule(std::function<double(double, double)> map);
};

// Monte-Carlo estimate of one market outcome. Estimates are unbiased for
// the closed forms; rank-conditional rows with zero trials report NaN.
// Calls with the same seed reuse the same (u1, u2, rank) draws, so paired
// comparisons across nearby inputs are variance-reduced by common random
// numbers.
struct RankEstimate {
    double estimate = 0.0;
    double se = 0.0;  // sqrt(p(1-p)/n) for the conditional sample
    std::int64_t trials = 0;
};

struct EmpiricalOutcome {
    RankEstimate d11, d12, d21, d22;
    double demand1 = 0.0, demand1_se = 0.0;  // unconditional per-seller demand
    double demand2 = 0.0, demand2_se = 0.0;
    double profit = 0.0, profit_se = 0.0;
    double sw = 0.0, sw_se = 0.0;
    double cs = 0.0, cs_se = 0.0;
    double trade_prob = 0.0, trade_prob_se = 0.0;
    std::int64_t consumers = 0;
    std::uint64_t seed = 0;
};

struct DeviationGain {
    double price = 0.0;   // best deviation found on the grid
    double gain = 0.0;    // profit improvement over the on-path profit
};

struct VerificationReport {
    bool is_equilibrium = false;
    DeviationGain best_deviation_1, best_deviation_2;
    long grid_n = 0;
    double tol = 0.0;
};

struct EquilibriumResult {
    bool converged = false;
    PricePair prices;
    int iterations = 0;
    VerificationReport verification;
};

// Simulates n consumers: draw (u1,u2) iid from the match distribution,
// rank by a Bernoulli(alpha) draw, follow the reservation stopping rule
// with free recall (first search free, second costs s). Sharded into
// fixed-size blocks with splitmix64-derived block seeds feeding
// xoshiro256**, merged in block order: identical seeds give bit-identical
// outcomes.
EmpiricalOutcome simulate(const SearchEnv& env, const PricePair& prices, double alpha,
                          std::int64_t n, std::uint64_t seed);

// Analytic Nash check: sweeps each seller's unilateral deviations over a
// grid on [0, A], pricing profits with the algorithm's alpha map and the
// extended rank demands. Equilibrium iff no deviation gains more than tol.
VerificationReport verify_nash(const SearchEnv& env, const SearchAlgorithm& algorithm,
                               const PricePair& prices, long grid_n, double tol);

// Alternating best response (coarse grid bracketing + golden section on
// [0, A]); stops when successive prices move less than tol. The fixed
// point is re-checked with verify_nash; non-convergence is reported, not
// thrown.
EquilibriumResult find_equilibrium(const SearchEnv& env, const SearchAlgorithm& algorithm,
                                   const PricePair& start, int max_iter, double tol);

}  // namespace steer
