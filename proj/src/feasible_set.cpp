#include "steer/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "steer/errors.hpp"
#include "steer/quadrature.hpp"
#include "steer/rng.hpp"

namespace steer {
namespace {

void check_box(const PricePair& prices) {
    const bool ok = std::isfinite(prices.p1) && std::isfinite(prices.p2) &&
                    prices.p1 >= 0.0 && prices.p1 <= 1.0 && prices.p2 >= 0.0 &&
                    prices.p2 <= 1.0;
    if (!ok) throw DomainError("prices must be finite and in [0,1]");
}

// Boundary point along the ray anchor + r*(cos t, sin t); requires
// H(anchor) < 0. Bisects the radius until the bracket is below 1e-13,
// returning the inside endpoint (|H| well under 1e-9 there).
PricePair ray_root(const SearchEnv& env, double anchor, double angle) {
    const double cx = std::cos(angle);
    const double cy = std::sin(angle);
    auto point = [&](double r) {
        // Clamp away the one-ulp overshoot at the box edge.
        return PricePair{std::clamp(anchor + r * cx, 0.0, 1.0),
                         std::clamp(anchor + r * cy, 0.0, 1.0)};
    };
    // Largest radius keeping the ray inside the closed unit box.
    double r_max = 2.0;
    if (cx > 0) r_max = std::min(r_max, (1.0 - anchor) / cx);
    if (cx < 0) r_max = std::min(r_max, -anchor / cx);
    if (cy > 0) r_max = std::min(r_max, (1.0 - anchor) / cy);
    if (cy < 0) r_max = std::min(r_max, -anchor / cy);

    double lo = 0.0;
    double hi = r_max;
    if (h_value(env, point(hi)) <= 0.0)
        throw NoRoot("trace_boundary: region not closed inside the unit box");
    // Grow the inside radius first so the bracket is tight.
    for (double r = r_max / 64.0; r < r_max; r *= 1.7) {
        if (h_value(env, point(r)) <= 0.0) {
            lo = r;
        } else {
            hi = r;
            break;
        }
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (h_value(env, point(mid)) <= 0.0 ? lo : hi) = mid;
    }
    return point(lo);
}

}  // namespace

double h_value(const SearchEnv& env, const PricePair& prices) {
    check_box(prices);
    const double p1 = prices.p1, p2 = prices.p2;
    const double max_pi1 = best_deviation(env, p2).profit;  // seller 1 deviates vs p2
    const double max_pi2 = best_deviation(env, p1).profit;  // seller 2 deviates vs p1
    const double f1 = env.dist.F(p1), f2 = env.dist.F(p2);
    return p2 * max_pi1 + p1 * max_pi2 + p1 * p2 * f1 * f2 - p1 * p2;
}

AlphaInterval alpha_interval(const SearchEnv& env, const PricePair& prices) {
    check_box(prices);
    const double a = env.threshold;
    const double p1 = prices.p1, p2 = prices.p2;
    const double gap = prices.delta();
    const double bonus = (1.0 - a) * (1.0 - a) - 0.5 * gap * gap;
    if (bonus <= 1e-12) {
        if (env.cost <= 0.0)
            throw DegenerateBonus("alpha_interval: bonus vanishes at s = 0");
        return {};  // gap too wide for any punishment to bite
    }
    if (p1 <= 0.0 || p2 <= 0.0) return {};  // zero prices carry no bonus value

    const double pi12 = p1 * second_rank_demand(env, p1, p2);
    const double pi22 = p2 * second_rank_demand(env, p2, p1);
    const double raw_lo = (best_deviation(env, p2).profit - pi12) / (p1 * bonus);
    const double raw_hi = 1.0 - (best_deviation(env, p1).profit - pi22) / (p2 * bonus);

    if (raw_lo <= raw_hi && raw_hi >= 0.0 && raw_lo <= 1.0) {
        AlphaInterval out;
        out.lo = std::clamp(raw_lo, 0.0, 1.0);
        out.hi = std::clamp(raw_hi, 0.0, 1.0);
        out.empty = false;
        return out;
    }
    // hi - lo = -H / (p1 p2 B): a hair past the boundary still counts inside.
    if (h_value(env, prices) <= kMembershipTol) {
        AlphaInterval out;
        out.lo = out.hi = std::clamp(0.5 * (raw_lo + raw_hi), 0.0, 1.0);
        out.empty = false;
        return out;
    }
    return {};
}

bool contains(const SearchEnv& env, const PricePair& prices) {
    return h_value(env, prices) <= kMembershipTol;
}

DiagonalRoots diagonal_roots(const SearchEnv& env) {
    if (env.cost <= 0.0) throw DegenerateBonus("diagonal_roots: requires s > 0");
    // Same roots as H(p,p) for p > 0, but bounded away from the p=0 zero.
    auto g = [&](double p) {
        return 2.0 * best_deviation(env, p).profit + p * p * p - p;
    };
    constexpr int kScan = 2048;
    const double lo_end = 1e-6, hi_end = 1.0;
    double prev_p = lo_end;
    double prev_g = g(prev_p);
    std::vector<std::pair<double, double>> brackets;
    for (int i = 1; i <= kScan; ++i) {
        const double p = lo_end + (hi_end - lo_end) * i / kScan;
        const double gp = g(p);
        if ((prev_g > 0.0) != (gp > 0.0)) brackets.emplace_back(prev_p, p);
        prev_p = p;
        prev_g = gp;
    }
    if (brackets.empty()) {
        // Tiny s: the dip can be narrower than the scan step. Locate the
        // minimum before giving up.
        const double p_min = golden_max([&](double p) { return -g(p); },
                                        lo_end, hi_end, 1e-12);
        if (g(p_min) >= 0.0)
            throw NoRoot("diagonal_roots: H(p,p) > 0 everywhere; P is degenerate");
        brackets.emplace_back(lo_end, p_min);
        brackets.emplace_back(p_min, hi_end);
    }
    DiagonalRoots roots;
    roots.low = bisect_root(g, brackets.front().first, brackets.front().second, 1e-13);
    roots.high = bisect_root(g, brackets.back().first, brackets.back().second, 1e-13);
    return roots;
}

BoundaryCurve trace_boundary(const SearchEnv& env, int n) {
    if (n < 64) throw DomainError("trace_boundary: need n >= 64 rays");
    const DiagonalRoots roots = diagonal_roots(env);
    const double anchor = 0.5 * (roots.low + roots.high);

    BoundaryCurve curve;
    curve.p_low_diag = roots.low;
    curve.p_high_diag = roots.high;
    curve.points.resize(n);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int k = 0; k < n; ++k)
        curve.points[k] = ray_root(env, anchor, two_pi * k / n);

    // Polish each extreme by golden section on the ray angle around the
    // best sampled direction.
    auto polish = [&](auto key, int sign) {
        int best = 0;
        for (int k = 1; k < n; ++k)
            if (sign * key(curve.points[k]) > sign * key(curve.points[best])) best = k;
        const double t0 = two_pi * best / n;
        const double w = two_pi / n;
        const double t = golden_max(
            [&](double angle) { return sign * key(ray_root(env, anchor, angle)); },
            t0 - w, t0 + w, 1e-12);
        return ray_root(env, anchor, t);
    };
    auto get_p1 = [](const PricePair& p) { return p.p1; };
    auto get_p2 = [](const PricePair& p) { return p.p2; };
    curve.m_left = polish(get_p1, -1);
    curve.m_right = polish(get_p1, +1);
    curve.m_low = polish(get_p2, -1);
    curve.m_high = polish(get_p2, +1);
    return curve;
}

NestingReport nesting_check(const SearchEnv& env_small_s, const SearchEnv& env_large_s,
                            long samples, unsigned long long seed) {
    if (env_small_s.cost > env_large_s.cost)
        throw DomainError("nesting_check: expects s1 <= s2");
    NestingReport report;
    Xoshiro256 rng(block_seed(seed, 0));
    long accepted = 0;
    long attempts = 0;
    const long max_attempts = samples * 10000;
    while (accepted < samples && attempts < max_attempts) {
        ++attempts;
        const PricePair p{rng.uniform(), rng.uniform()};
        if (!contains(env_small_s, p)) continue;
        ++accepted;
        if (!contains(env_large_s, p)) report.violations.push_back(p);
    }
    report.samples_checked = accepted;
    return report;
}

std::string boundary_to_csv(const BoundaryCurve& curve) {
    std::ostringstream out;
    char buf[128];
    auto row = [&](const PricePair& p, const char* tag) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", p.p1, p.p2, tag);
        out << buf;
    };
    out << "p1,p2,tag\n";
    for (const PricePair& p : curve.points) row(p, "plain");
    row(curve.m_left, "m_left");
    row(curve.m_right, "m_right");
    row(curve.m_low, "m_low");
    row(curve.m_high, "m_high");
    row({curve.p_low_diag, curve.p_low_diag}, "diag_low");
    row({curve.p_high_diag, curve.p_high_diag}, "diag_high");
    return out.str();
}

BoundaryCurve boundary_from_csv(const std::string& csv) {
    BoundaryCurve curve;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // "p1,p2,tag"
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string a, b, tag;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
            !std::getline(row, tag))
            throw DomainError("boundary_from_csv: malformed row: " + line);
        const PricePair p{std::stod(a), std::stod(b)};
        if (tag == "plain")
            curve.points.push_back(p);
        else if (tag == "m_left")
            curve.m_left = p;
        else if (tag == "m_right")
            curve.m_right = p;
        else if (tag == "m_low")
            curve.m_low = p;
        else if (tag == "m_high")
            curve.m_high = p;
        else if (tag == "diag_low")
            curve.p_low_diag = p.p1;
        else if (tag == "diag_high")
            curve.p_high_diag = p.p1;
        else
            throw DomainError("boundary_from_csv: unknown tag: " + tag);
    }
    return curve;
}

}  // namespace steer
