#include "steer/demand.hpp"

#include <cmath>

#include "steer/errors.hpp"
#include "steer/quadrature.hpp"

namespace steer {
namespace {

void check_prices(const PricePair& prices) {
    const bool ok = std::isfinite(prices.p1) && std::isfinite(prices.p2) &&
                    prices.p1 >= 0.0 && prices.p1 <= 1.0 && prices.p2 >= 0.0 &&
                    prices.p2 <= 1.0;
    if (!ok) throw DomainError("prices must be finite and in [0,1]");
}

void check_plain_region(const SearchEnv& env, const PricePair& prices) {
    check_prices(prices);
    if (!in_plain_region(env, prices))
        throw DomainError("price pair outside the nondegenerate region (corner regime)");
}

// Demand of the first-inspected seller, general F, own/other <= A and
// A + own - other <= 1.
double first_quad(const SearchEnv& env, double own, double other) {
    const Distribution& d = env.dist;
    const double a = env.threshold;
    const double gap = own - other;
    const double tail = 1.0 - d.F(a + gap);
    const double recall = integrate(
        [&](double u) { return d.F(u - gap) * d.f(u); }, own, a + gap, 1e-11);
    return tail + recall;
}

// Demand of the second-inspected seller, general F, same region.
double second_quad(const SearchEnv& env, double own, double other) {
    const Distribution& d = env.dist;
    const double a = env.threshold;
    const double gap = other - own;  // first-ranked price minus own
    const double spill = (1.0 - d.F(a)) * d.F(a + gap);
    const double contest = integrate(
        [&](double u) { return d.F(u + gap) * d.f(u); }, own, a, 1e-11);
    return spill + contest;
}

}  // namespace

bool in_plain_region(const SearchEnv& env, const PricePair& prices) {
    const double a = env.threshold;
    return std::max(prices.p1, prices.p2) <= a &&
           std::abs(prices.delta()) <= 1.0 - a;
}

double first_rank_demand(const SearchEnv& env, double own, double other) {
    const double a = env.threshold;
    if (other > a) return 1.0 - own;  // rival unsearchable: monopoly on u > own
    const double gap = own - other;
    if (a + gap <= 1.0)
        return 0.5 * a * a - 0.5 * other * other - a - own + other + 1.0;
    // Immediate-purchase region empty: every buyer recalls after sampling.
    return 0.5 * (1.0 - own * own) - gap * (1.0 - own);
}

double second_rank_demand(const SearchEnv& env, double own, double other) {
    const double a = env.threshold;
    if (own > a) return 0.0;  // consumers never pay s to inspect a price above A
    const double gap = other - own;
    if (a + gap <= 1.0)
        return -0.5 * a * a + 0.5 * own * own - own * other + a + other - own;
    return 0.5 * (1.0 - gap * gap) - 0.5 * own * own - gap * own + gap;
}

DemandProfile demand_profile(const SearchEnv& env, const PricePair& prices) {
    check_plain_region(env, prices);
    const double p1 = prices.p1, p2 = prices.p2;
    DemandProfile out;
    if (env.uniform()) {
        const double a = env.threshold;
        out.d11 = 0.5 * a * a - 0.5 * p2 * p2 - a - p1 + p2 + 1.0;
        out.d12 = -0.5 * a * a + 0.5 * p1 * p1 - p1 * p2 + a - p1 + p2;
        out.d21 = 0.5 * a * a - 0.5 * p1 * p1 - a + p1 - p2 + 1.0;
        out.d22 = -0.5 * a * a + 0.5 * p2 * p2 - p1 * p2 + a + p1 - p2;
        const double gap = p1 - p2;
        out.bonus = (1.0 - a) * (1.0 - a) - 0.5 * gap * gap;
    } else {
        out.d11 = first_quad(env, p1, p2);
        out.d21 = first_quad(env, p2, p1);
        out.d22 = second_quad(env, p2, p1);
        out.d12 = second_quad(env, p1, p2);
        out.bonus = out.d11 - out.d12;
    }
    return out;
}

StoppingDecision stopping_decision(const SearchEnv& env, const PricePair& prices,
                                   int first, double u_first) {
    check_prices(prices);
    if (u_first < 0.0 || u_first > 1.0)
        throw DomainError("stopping_decision: draw outside [0,1]");
    const double p_first = (first == 1) ? prices.p1 : prices.p2;
    const double p_second = (first == 1) ? prices.p2 : prices.p1;
    if (u_first <= p_first) return StoppingDecision::NeverBuyFirst;
    if (u_first - p_first > env.threshold - p_second) return StoppingDecision::BuyNow;
    return StoppingDecision::Continue;  // ties continue
}

SocialValues social_values(const SearchEnv& env, const PricePair& prices) {
    check_plain_region(env, prices);
    const Distribution& d = env.dist;
    const double a = env.threshold;
    const double s = env.cost;

    // Value delivered and welfare for the order (first, second).
    auto order_values = [&](double pf, double ps, double* vf, double* vs) {
        const double gap = pf - ps;
        if (env.uniform()) {
            const double e = a + gap;
            *vf = 0.5 * (1.0 - e * e) + (e * e * e - pf * pf * pf) / 3.0 -
                  0.5 * gap * (e * e - pf * pf);
            *vs = 0.5 * e * (1.0 - a * a) + (a * a * a - ps * ps * ps) / 3.0 +
                  0.5 * gap * (a * a - ps * ps);
        } else {
            *vf = integrate([&](double u) { return u * d.f(u); }, a + gap, 1.0, 1e-11) +
                  integrate([&](double u) { return u * d.F(u - gap) * d.f(u); }, pf,
                            a + gap, 1e-11);
            *vs = d.F(a + gap) *
                      integrate([&](double u) { return u * d.f(u); }, a, 1.0, 1e-11) +
                  integrate([&](double u) { return u * d.F(u + gap) * d.f(u); }, ps, a,
                            1e-11);
        }
    };

    SocialValues out;
    double v21 = 0.0, v12 = 0.0;
    order_values(prices.p1, prices.p2, &out.v11, &out.v22);
    order_values(prices.p2, prices.p1, &v21, &v12);
    out.sw1 = out.v11 + out.v22 - d.F(a + prices.delta()) * s;
    out.sw2 = v21 + v12 - d.F(a - prices.delta()) * s;
    return out;
}

}  // namespace steer
