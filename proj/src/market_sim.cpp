#include "steer/market_sim.hpp"

#include <cmath>
#include <limits>

#include "steer/errors.hpp"
#include "steer/quadrature.hpp"
#include "steer/rng.hpp"

namespace steer {
namespace {

constexpr std::int64_t kBlockSize = 1 << 16;

// Seller profit at (own, other) prices when ranked first w.p. a.
double algo_profit(const SearchEnv& env, double own, double other, double a) {
    return a * own * first_rank_demand(env, own, other) +
           (1.0 - a) * own * second_rank_demand(env, own, other);
}

double profit_of(const SearchEnv& env, const SearchAlgorithm& algo, int seller,
                 double p1, double p2) {
    const double a = algo.alpha(p1, p2);
    return seller == 1 ? algo_profit(env, p1, p2, a)
                       : algo_profit(env, p2, p1, 1.0 - a);
}

struct BlockTotals {
    std::int64_t rank1 = 0;        // consumers with seller 1 first
    std::int64_t buy11 = 0, buy12 = 0, buy21 = 0, buy22 = 0;  // sales by seller x rank
    std::int64_t trades = 0;
    double profit = 0.0, profit_sq = 0.0;
    double sw = 0.0, sw_sq = 0.0;
    double cs = 0.0, cs_sq = 0.0;
};

void accumulate_block(const SearchEnv& env, const PricePair& prices, double alpha,
                      std::int64_t count, std::uint64_t seed, BlockTotals* t) {
    Xoshiro256 rng(seed);
    const double a = env.threshold;
    const double s = env.cost;
    for (std::int64_t i = 0; i < count; ++i) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const bool one_first = rng.uniform() < alpha;
        const double pf = one_first ? prices.p1 : prices.p2;
        const double ps = one_first ? prices.p2 : prices.p1;
        const double uf = one_first ? u1 : u2;
        const double us = one_first ? u2 : u1;
        if (one_first) ++t->rank1;

        int bought = 0;       // 0 none, 1 first-ranked seller, 2 second-ranked
        bool searched = false;
        if (uf > pf && uf - pf > a - ps) {
            bought = 1;  // immediate purchase
        } else if (ps <= a) {
            searched = true;  // second inspection worth its cost
            const double sf = uf - pf;
            const double ss = us - ps;
            if (ss > 0.0 && ss > sf)
                bought = 2;
            else if (sf > 0.0)
                bought = 1;  // free recall
        }

        double revenue = 0.0, value = 0.0, surplus = 0.0;
        if (bought == 1) {
            revenue = pf;
            value = uf;
            surplus = uf - pf;
        } else if (bought == 2) {
            revenue = ps;
            value = us;
            surplus = us - ps;
        }
        if (bought != 0) ++t->trades;
        const double cost = searched ? s : 0.0;
        const double sw_i = value - cost;
        const double cs_i = surplus - cost;

        if (bought == 1) (one_first ? t->buy11 : t->buy21) += 1;
        if (bought == 2) (one_first ? t->buy22 : t->buy12) += 1;
        t->profit += revenue;
        t->profit_sq += revenue * revenue;
        t->sw += sw_i;
        t->sw_sq += sw_i * sw_i;
        t->cs += cs_i;
        t->cs_sq += cs_i * cs_i;
    }
}

RankEstimate rank_estimate(std::int64_t hits, std::int64_t trials) {
    RankEstimate e;
    e.trials = trials;
    if (trials == 0) {
        e.estimate = std::numeric_limits<double>::quiet_NaN();
        e.se = std::numeric_limits<double>::quiet_NaN();
        return e;
    }
    e.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    e.se = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
    return e;
}

double mean_se(double sum, double sum_sq, std::int64_t n) {
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
    return std::sqrt(var / static_cast<double>(n));
}

}  // namespace

double SearchAlgorithm::alpha(double p1, double p2) const {
    switch (kind) {
        case Kind::Prominence:
            return favored == 1 ? 1.0 : 0.0;
        case Kind::Random:
            return 0.5;
        case Kind::PriceDirected:
            if (p1 < p2) return 1.0;
            if (p1 > p2) return 0.0;
            return tie_alpha;
        case Kind::ContractRule: {
            const bool on1 = p1 == contract.p1;
            const bool on2 = p2 == contract.p2;
            if (on1 && on2) return contract.alpha;
            if (on1) return 1.0;  // lone p2 deviation demotes seller 2
            if (on2) return 0.0;  // lone p1 deviation demotes seller 1
            return off_path_alpha;
        }
        case Kind::Custom:
            return custom(p1, p2);
    }
    return 0.5;
}

SearchAlgorithm SearchAlgorithm::prominence(int seller) {
    SearchAlgorithm a;
    a.kind = Kind::Prominence;
    a.favored = seller;
    return a;
}

SearchAlgorithm SearchAlgorithm::random() {
    SearchAlgorithm a;
    a.kind = Kind::Random;
    return a;
}

SearchAlgorithm SearchAlgorithm::price_directed(double tie_alpha) {
    SearchAlgorithm a;
    a.kind = Kind::PriceDirected;
    a.tie_alpha = tie_alpha;
    return a;
}

SearchAlgorithm SearchAlgorithm::contract_rule(const Contract& c, double off_path) {
    SearchAlgorithm a;
    a.kind = Kind::ContractRule;
    a.contract = c;
    a.off_path_alpha = off_path;
    return a;
}

SearchAlgorithm SearchAlgorithm::custom_rule(std::function<double(double, double)> map) {
    SearchAlgorithm a;
    a.kind = Kind::Custom;
    a.custom = std::move(map);
    return a;
}

EmpiricalOutcome simulate(const SearchEnv& env, const PricePair& prices, double alpha,
                          std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("simulate: need n >= 1 consumers");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("simulate: alpha outside [0,1]");
    if (!env.uniform())
        throw DomainError("simulate: Uniform01 draws only");

    BlockTotals total;
    const std::int64_t blocks = (n + kBlockSize - 1) / kBlockSize;
    for (std::int64_t b = 0; b < blocks; ++b) {
        const std::int64_t count = std::min(kBlockSize, n - b * kBlockSize);
        accumulate_block(env, prices, alpha, count,
                         block_seed(seed, static_cast<std::uint64_t>(b)), &total);
    }

    EmpiricalOutcome out;
    out.consumers = n;
    out.seed = seed;
    const std::int64_t rank2 = n - total.rank1;
    out.d11 = rank_estimate(total.buy11, total.rank1);
    out.d22 = rank_estimate(total.buy22, total.rank1);
    out.d21 = rank_estimate(total.buy21, rank2);
    out.d12 = rank_estimate(total.buy12, rank2);

    const auto nd = static_cast<double>(n);
    const double sales1 = static_cast<double>(total.buy11 + total.buy12);
    const double sales2 = static_cast<double>(total.buy21 + total.buy22);
    out.demand1 = sales1 / nd;
    out.demand2 = sales2 / nd;
    out.demand1_se = std::sqrt(out.demand1 * (1.0 - out.demand1) / nd);
    out.demand2_se = std::sqrt(out.demand2 * (1.0 - out.demand2) / nd);
    out.trade_prob = static_cast<double>(total.trades) / nd;
    out.trade_prob_se = std::sqrt(out.trade_prob * (1.0 - out.trade_prob) / nd);
    out.profit = total.profit / nd;
    out.profit_se = mean_se(total.profit, total.profit_sq, n);
    out.sw = total.sw / nd;
    out.sw_se = mean_se(total.sw, total.sw_sq, n);
    out.cs = total.cs / nd;
    out.cs_se = mean_se(total.cs, total.cs_sq, n);
    return out;
}

VerificationReport verify_nash(const SearchEnv& env, const SearchAlgorithm& algorithm,
                               const PricePair& prices, long grid_n, double tol) {
    if (grid_n < 2) throw DomainError("verify_nash: need grid_n >= 2");
    VerificationReport report;
    report.grid_n = grid_n;
    report.tol = tol;
    const double cap = std::min(env.threshold, 1.0);

    const double base1 = profit_of(env, algorithm, 1, prices.p1, prices.p2);
    const double base2 = profit_of(env, algorithm, 2, prices.p1, prices.p2);
    DeviationGain g1{prices.p1, 0.0}, g2{prices.p2, 0.0};
    for (long k = 0; k < grid_n; ++k) {
        const double p = cap * static_cast<double>(k) / static_cast<double>(grid_n - 1);
        const double gain1 = profit_of(env, algorithm, 1, p, prices.p2) - base1;
        if (gain1 > g1.gain) g1 = {p, gain1};
        const double gain2 = profit_of(env, algorithm, 2, prices.p1, p) - base2;
        if (gain2 > g2.gain) g2 = {p, gain2};
    }
    report.best_deviation_1 = g1;
    report.best_deviation_2 = g2;
    report.is_equilibrium = g1.gain <= tol && g2.gain <= tol;
    return report;
}

EquilibriumResult find_equilibrium(const SearchEnv& env, const SearchAlgorithm& algorithm,
                                   const PricePair& start, int max_iter, double tol) {
    EquilibriumResult result;
    result.prices = start;
    const double cap = std::min(env.threshold, 1.0);

    auto best_response = [&](int seller, const PricePair& p) {
        auto value = [&](double x) {
            return seller == 1 ? profit_of(env, algorithm, 1, x, p.p2)
                               : profit_of(env, algorithm, 2, p.p1, x);
        };
        // Coarse bracket first; golden section inside the best cell.
        constexpr int kCells = 256;
        int best = 0;
        double best_v = -1.0;
        for (int k = 0; k <= kCells; ++k) {
            const double v = value(cap * k / kCells);
            if (v > best_v) {
                best_v = v;
                best = k;
            }
        }
        const double lo = cap * std::max(0, best - 1) / kCells;
        const double hi = cap * std::min(kCells, best + 1) / kCells;
        return golden_max(value, lo, hi, 1e-13);
    };

    for (int it = 0; it < max_iter; ++it) {
        const PricePair prev = result.prices;
        result.prices.p1 = best_response(1, result.prices);
        result.prices.p2 = best_response(2, result.prices);
        result.iterations = it + 1;
        if (std::abs(result.prices.p1 - prev.p1) < tol &&
            std::abs(result.prices.p2 - prev.p2) < tol) {
            result.converged = true;
            break;
        }
    }
    result.verification = verify_nash(env, algorithm, result.prices, 2000, 1e-8);
    if (!result.verification.is_equilibrium) result.converged = false;
    return result;
}

}  // namespace steer
