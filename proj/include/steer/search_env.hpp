#pragma once

#include <functional>

namespace steer {

enum class DistKind { Uniform01, General };

// Match-value distribution on [0,1]. Uniform01 is the canonical case with
// closed forms everywhere; General(cdf,pdf) is supported by the demand layer
// only, via quadrature.
struct Distribution {
    DistKind kind = DistKind::Uniform01;
    std::function<double(double)> cdf;  // General only
    std::function<double(double)> pdf;  // General only

    static Distribution uniform01() { return {}; }
    static Distribution general(std::function<double(double)> cdf,
                                std::function<double(double)> pdf) {
        return {DistKind::General, std::move(cdf), std::move(pdf)};
    }

    double F(double u) const;  // clamped to [0,1] outside the support
    double f(double u) const;  // zero outside the support
};

// Market primitives: search cost s, the reservation threshold derived from
// V(threshold) = s, and the match distribution.
struct SearchEnv {
    double cost = 0.0;       // search cost s, utility units
    double threshold = 1.0;  // reservation price level, V(threshold) = cost
    Distribution dist;

    static SearchEnv from_cost(double s, Distribution d = Distribution::uniform01());
    static SearchEnv from_threshold(double a, Distribution d = Distribution::uniform01());

    bool uniform() const { return dist.kind == DistKind::Uniform01; }
};

// Inverts V(A) = s. Uniform: A = 1 - sqrt(2s); general distributions solve
// V(A) = s by bisection on the monotone V. Throws CostOutOfRange for
// s < 0 or s above V(0).
double threshold_from_cost(double s, const Distribution& dist = Distribution::uniform01());

// V(p) = E[max(0, u - p)], the expected incremental surplus of one more
// search at price p. (1-p)^2/2 under Uniform01; adaptive quadrature of
// the tail integral otherwise. Strictly decreasing in p.
double reservation_surplus(double p, const Distribution& dist = Distribution::uniform01());

}  // namespace steer
