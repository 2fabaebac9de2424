#pragma once

#include <string>
#include <vector>

#include "steer/best_response.hpp"
#include "steer/demand.hpp"

namespace steer {

// Membership tolerance: H <= kMembershipTol counts as inside (P is closed).
inline constexpr double kMembershipTol = 1e-9;

// Implementable search orders at a price pair: the interval of on-path
// probabilities alpha compatible with both IC constraints. Empty iff H > 0.
struct AlphaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    bool singleton(double tol = 1e-9) const { return !empty && hi - lo <= tol; }
    bool contains(double alpha) const { return !empty && alpha >= lo && alpha <= hi; }
    double mid() const { return 0.5 * (lo + hi); }
};

// Ordered counterclockwise sample of the boundary of P with tagged extreme
// points and the diagonal roots.
struct BoundaryCurve {
    std::vector<PricePair> points;  // closed loop, no repeated endpoint
    PricePair m_left, m_right, m_low, m_high;
    double p_low_diag = 0.0;   // lower symmetric boundary price
    double p_high_diag = 0.0;  // upper symmetric boundary price
};

struct NestingReport {
    long samples_checked = 0;
    std::vector<PricePair> violations;  // points of P_{s1} outside P_{s2}
};

// H(p1,p2) = p2 max pi_1^2 + p1 max pi_2^2 + p1 p2 F(p1)F(p2) - p1 p2.
// Implementable iff H <= 0; symmetric in its arguments. Evaluated with the
// uniform closed forms on all of [0,1]^2 (the untruncated set the corner
// module compares against).
double h_value(const SearchEnv& env, const PricePair& prices);

// [alpha_lo, alpha_hi] from the binding IC equalities, clamped to [0,1].
// Identity: hi - lo = -H / (p1 p2 B). Throws DegenerateBonus when s = 0.
AlphaInterval alpha_interval(const SearchEnv& env, const PricePair& prices);

// Membership in P: h_value <= kMembershipTol.
bool contains(const SearchEnv& env, const PricePair& prices);

// The two roots of H(p,p) = 0, bisected to 1e-10; H < 0 strictly between
// them. Throws NoRoot when the diagonal never enters P.
struct DiagonalRoots {
    double low = 0.0;
    double high = 0.0;
};
DiagonalRoots diagonal_roots(const SearchEnv& env);

// Radial bisection of |H| = 0 along n rays from the diagonal anchor
// ((p_low + p_high)/2, same); extreme points polished by golden section on
// the ray angle. n >= 64.
BoundaryCurve trace_boundary(const SearchEnv& env, int n);

// Samples P_{s_small} and reports any sampled point outside P_{s_large}
// (there must be none for s_small <= s_large). Deterministic given seed.
NestingReport nesting_check(const SearchEnv& env_small_s, const SearchEnv& env_large_s,
                            long samples, unsigned long long seed = 20240901ULL);

// CSV with header "p1,p2,tag"; trace points tagged plain, then the four
// extremes and the two diagonal roots.
std::string boundary_to_csv(const BoundaryCurve& curve);
BoundaryCurve boundary_from_csv(const std::string& csv);

}  // namespace steer
