#include "steer/search_env.hpp"

#include <cmath>

#include "steer/errors.hpp"
#include "steer/quadrature.hpp"

namespace steer {

double Distribution::F(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return kind == DistKind::Uniform01 ? u : cdf(u);
}

double Distribution::f(double u) const {
    if (u < 0.0 || u > 1.0) return 0.0;
    return kind == DistKind::Uniform01 ? 1.0 : pdf(u);
}

double reservation_surplus(double p, const Distribution& dist) {
    if (p < 0.0 || p > 1.0) throw DomainError("reservation_surplus: price outside [0,1]");
    if (dist.kind == DistKind::Uniform01) return 0.5 * (1.0 - p) * (1.0 - p);
    return integrate([&](double u) { return (u - p) * dist.f(u); }, p, 1.0, 1e-10);
}

double threshold_from_cost(double s, const Distribution& dist) {
    if (dist.kind == DistKind::Uniform01) {
        if (s < 0.0 || s > 0.5)
            throw CostOutOfRange("threshold_from_cost: need 0 <= s <= 1/2 under Uniform01");
        return 1.0 - std::sqrt(2.0 * s);
    }
    const double vmax = reservation_surplus(0.0, dist);
    if (s < 0.0 || s > vmax)
        throw CostOutOfRange("threshold_from_cost: s outside [0, V(0)]");
    if (s == 0.0) return 1.0;
    return bisect_root([&](double a) { return reservation_surplus(a, dist) - s; },
                       0.0, 1.0, 1e-12);
}

SearchEnv SearchEnv::from_cost(double s, Distribution d) {
    SearchEnv env;
    env.cost = s;
    env.threshold = threshold_from_cost(s, d);
    env.dist = std::move(d);
    return env;
}

SearchEnv SearchEnv::from_threshold(double a, Distribution d) {
    if (a < 0.0 || a > 1.0) throw DomainError("SearchEnv: threshold outside [0,1]");
    SearchEnv env;
    env.threshold = a;
    env.cost = reservation_surplus(a, d);
    env.dist = std::move(d);
    return env;
}

}  // namespace steer
