#include "steer/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "steer/errors.hpp"
#include "steer/quadrature.hpp"

namespace steer {
namespace {

constexpr double kSqrt3Over3 = 0.57735026918962573;
constexpr double kDiagonalTol = 1e-6;   // regime: symmetric vs asymmetric
constexpr double kBoundaryTol = 1e-7;   // regime: boundary vs interior
constexpr double kBindTol = 1e-7;

double objective_component(const ObjectiveValues& v, Objective obj) {
    switch (obj) {
        case Objective::Profit: return v.profit;
        case Objective::TradeProb: return v.trade_prob;
        case Objective::Welfare: return v.sw;
        case Objective::ConsumerSurplus: return v.cs;
    }
    return 0.0;
}

struct InnerEval {
    bool feasible = false;
    double alpha = 0.5;
    double value = 0.0;
    AlphaInterval interval;
};

class ContractProblem {
  public:
    // Tighter than the public membership tolerance: keeps the optimizer from
    // harvesting value inside the H <= 1e-9 closure band around the boundary.
    static constexpr double kSolveMembershipTol = 1e-11;

    ContractProblem(const SearchEnv& env, Objective obj, Direction dir)
        : env_(env), obj_(obj), sign_(dir == Direction::Max ? 1.0 : -1.0) {}

    bool member(const PricePair& p) const {
        if (!in_plain_region(env_, p)) return false;
        return h_value(env_, p) <= kSolveMembershipTol;
    }

    // Inner stage: objectives are linear in alpha, so the optimum over the
    // implementable interval sits at an endpoint; on the diagonal the value
    // is alpha-free and 1/2 is reported.
    InnerEval inner(const PricePair& p) const {
        InnerEval out;
        if (!member(p)) return out;
        const AlphaInterval iv = alpha_interval(env_, p);
        if (iv.empty) return out;
        out.interval = iv;
        out.feasible = true;
        if (obj_ == Objective::TradeProb) {
            out.alpha = std::clamp(0.5, iv.lo, iv.hi);
            out.value = contract_values(env_, {p.p1, p.p2, out.alpha}).trade_prob;
            return out;
        }
        const double v_lo =
            objective_component(contract_values(env_, {p.p1, p.p2, iv.lo}), obj_);
        const double v_hi =
            objective_component(contract_values(env_, {p.p1, p.p2, iv.hi}), obj_);
        if (std::abs(p.delta()) <= 1e-9) {
            out.alpha = std::clamp(0.5, iv.lo, iv.hi);
            out.value = 0.5 * (v_lo + v_hi);  // alpha-free on the diagonal
        } else if (sign_ * v_lo >= sign_ * v_hi) {
            out.alpha = iv.lo;
            out.value = v_lo;
        } else {
            out.alpha = iv.hi;
            out.value = v_hi;
        }
        return out;
    }

    double score(const InnerEval& e) const {
        return e.feasible ? sign_ * e.value : -std::numeric_limits<double>::infinity();
    }

    const SearchEnv& env() const { return env_; }

  private:
    const SearchEnv& env_;
    Objective obj_;
    double sign_;
};

struct Candidate {
    PricePair prices;
    InnerEval eval;
};

void consider(const ContractProblem& prob, const PricePair& p, Candidate* best) {
    InnerEval e = prob.inner(p);
    if (!e.feasible) return;
    if (!best->eval.feasible || prob.score(e) > prob.score(best->eval))
        *best = {p, e};
}

// Extent of the member segment through `start` along a coordinate axis,
// found by stepping until exit and bisecting the crossing.
std::pair<double, double> member_segment(const ContractProblem& prob, PricePair start,
                                         bool along_p1, double step) {
    auto at = [&](double t) {
        PricePair p = start;
        (along_p1 ? p.p1 : p.p2) = t;
        return p;
    };
    const double t0 = along_p1 ? start.p1 : start.p2;
    auto push = [&](double dir) {
        double inside = t0;
        double probe = t0 + dir * step;
        while (probe >= 0.0 && probe <= 1.0 && prob.member(at(probe))) {
            inside = probe;
            probe += dir * step;
        }
        double outside = std::clamp(probe, 0.0, 1.0);
        if (outside == inside) return inside;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (inside + outside);
            (prob.member(at(mid)) ? inside : outside) = mid;
        }
        return inside;
    };
    return {push(-1.0), push(+1.0)};
}

Candidate refine(const ContractProblem& prob, Candidate c, double step) {
    for (int round = 0; round < 40; ++round) {
        const double before = prob.score(c.eval);
        for (bool along_p1 : {true, false}) {
            auto [lo, hi] = member_segment(prob, c.prices, along_p1, step);
            if (hi - lo < 1e-12) continue;
            auto line_value = [&](double t) {
                PricePair p = c.prices;
                (along_p1 ? p.p1 : p.p2) = t;
                return prob.score(prob.inner(p));
            };
            const double t = golden_max(line_value, lo, hi, 1e-11);
            PricePair p = c.prices;
            (along_p1 ? p.p1 : p.p2) = t;
            consider(prob, p, &c);
        }
        if (prob.score(c.eval) - before < 1e-13) break;
    }
    return c;
}

}  // namespace

ObjectiveValues contract_values(const SearchEnv& env, const Contract& c) {
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0))
        throw DomainError("contract_values: alpha outside [0,1]");
    const PricePair prices{c.p1, c.p2};
    const DemandProfile d = demand_profile(env, prices);
    const SocialValues sv = social_values(env, prices);
    ObjectiveValues out;
    out.profit1 = c.alpha * c.p1 * d.d11 + (1.0 - c.alpha) * c.p1 * d.d12;
    out.profit2 = c.alpha * c.p2 * d.d22 + (1.0 - c.alpha) * c.p2 * d.d21;
    out.profit = out.profit1 + out.profit2;
    out.trade_prob = 1.0 - env.dist.F(c.p1) * env.dist.F(c.p2);
    out.sw = c.alpha * sv.sw1 + (1.0 - c.alpha) * sv.sw2;
    out.cs = out.sw - out.profit;
    return out;
}

double optimal_alpha(const SearchEnv& env, const PricePair& prices,
                     Objective objective, Direction direction) {
    const AlphaInterval iv = alpha_interval(env, prices);
    if (iv.empty) throw Infeasible("optimal_alpha: prices not implementable");
    if (std::abs(prices.delta()) == 0.0) return std::clamp(0.5, iv.lo, iv.hi);
    if (objective == Objective::TradeProb) return std::clamp(0.5, iv.lo, iv.hi);

    const bool p1_higher = prices.p1 > prices.p2;
    bool take_hi;
    if (objective == Objective::Profit) {
        take_hi = p1_higher;  // steer traffic toward the pricier seller
    } else {
        take_hi = !p1_higher;  // welfare and surplus favor the cheaper seller
    }
    if (direction == Direction::Min) take_hi = !take_hi;
    return take_hi ? iv.hi : iv.lo;
}

SolveResult first_best(const SearchEnv& env) {
    if (!env.uniform()) throw DomainError("first_best: requires Uniform01");
    const double a = env.threshold;
    auto gamma = [&](double p2) {
        return 0.5 * a * a - a + 1.0 - 2.0 / (3.0 * p2) + 2.0 * p2 - 1.5 * p2 * p2;
    };
    // gamma(sqrt(3)/3) = (A-1)^2/2, which rounds to a negative ulp at s = 0;
    // pad the bracket so the zero-cost limit still bisects.
    const double p2 = bisect_root(gamma, 0.1, kSqrt3Over3 + 1e-9, 1e-12);
    const double p1 = 1.0 / (3.0 * p2);
    const double value = p1 * first_rank_demand(env, p1, p2) +
                         p2 * second_rank_demand(env, p2, p1);
    SolveResult out;
    out.contract = {p1, p2, 1.0};
    out.value = value;
    out.regime = Regime::UnconstrainedFirstBest;
    out.binding = "none";
    out.has_mirror = true;
    out.mirror = {p2, p1, 0.0};
    return out;
}

SolveResult solve(const SearchEnv& env, Objective objective, Direction direction,
                  int grid_n) {
    if (!env.uniform()) throw DomainError("solve: requires Uniform01");
    if (env.cost <= 0.0) throw DomainError("solve: requires s > 0");
    grid_n = std::max(grid_n, 400);

    DiagonalRoots roots;
    try {
        roots = diagonal_roots(env);
    } catch (const NoRoot&) {
        throw Infeasible("solve: P is empty at this search cost");
    }
    const BoundaryCurve curve = trace_boundary(env, 1024);
    const ContractProblem prob(env, objective, direction);
    const double a = env.threshold;

    Candidate best;

    // Diagonal scan; roots are exact candidates, interior points polished.
    {
        const double lo = roots.low;
        const double hi = std::min(roots.high, a);
        consider(prob, {lo, lo}, &best);
        consider(prob, {hi, hi}, &best);
        const int steps = 512;
        Candidate diag_best;
        for (int i = 0; i <= steps; ++i) {
            const double p = lo + (hi - lo) * i / steps;
            consider(prob, {p, p}, &diag_best);
        }
        if (diag_best.eval.feasible) {
            const double t = golden_max(
                [&](double p) { return prob.score(prob.inner({p, p})); },
                std::max(lo, diag_best.prices.p1 - (hi - lo) / steps),
                std::min(hi, diag_best.prices.p1 + (hi - lo) / steps), 1e-12);
            consider(prob, {t, t}, &diag_best);
            if (!best.eval.feasible || prob.score(diag_best.eval) > prob.score(best.eval))
                best = diag_best;
        }
    }

    // Boundary-arc scan: traced points double as refinement seeds.
    Candidate boundary_best;
    for (const PricePair& p : curve.points) consider(prob, p, &boundary_best);
    for (const PricePair& p :
         {curve.m_left, curve.m_right, curve.m_low, curve.m_high})
        consider(prob, p, &boundary_best);
    if (boundary_best.eval.feasible &&
        (!best.eval.feasible || prob.score(boundary_best.eval) > prob.score(best.eval)))
        best = boundary_best;

    // Full-grid oracle over the bounding box of P within the price region.
    const double x0 = std::max(0.0, curve.m_left.p1 - 1e-6);
    const double x1 = std::min(a, curve.m_right.p1 + 1e-6);
    const double y0 = std::max(0.0, curve.m_low.p2 - 1e-6);
    const double y1 = std::min(a, curve.m_high.p2 + 1e-6);
    const double step_x = (x1 - x0) / (grid_n - 1);
    const double step_y = (y1 - y0) / (grid_n - 1);
    // Track the best cell per 4x4 super-block so refinement starts are
    // spatially diverse, not clustered around one basin.
    constexpr int kBlocks = 4;
    Candidate block_best[kBlocks][kBlocks];
    Candidate grid_best;
    std::vector<Candidate> seeds;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const PricePair p{x0 + i * step_x, y0 + j * step_y};
            InnerEval e = prob.inner(p);
            if (!e.feasible) continue;
            Candidate& blk =
                block_best[i * kBlocks / grid_n][j * kBlocks / grid_n];
            if (!blk.eval.feasible || prob.score(e) > prob.score(blk.eval))
                blk = {p, e};
            if (!grid_best.eval.feasible || prob.score(e) > prob.score(grid_best.eval))
                grid_best = {p, e};
        }
    }
    if (grid_best.eval.feasible &&
        (!best.eval.feasible || prob.score(grid_best.eval) > prob.score(best.eval)))
        best = grid_best;
    for (auto& row : block_best)
        for (Candidate& blk : row)
            if (blk.eval.feasible) seeds.push_back(blk);
    if (boundary_best.eval.feasible) seeds.push_back(boundary_best);
    if (best.eval.feasible) seeds.push_back(best);

    // Multi-start coordinate refinement.
    const double step = std::max(step_x, step_y);
    for (const Candidate& seed : seeds) {
        Candidate polished = refine(prob, seed, std::max(step, 1e-4));
        if (polished.eval.feasible &&
            (!best.eval.feasible || prob.score(polished.eval) > prob.score(best.eval)))
            best = polished;
    }

    if (!best.eval.feasible)
        throw Infeasible("solve: no feasible contract found");

    // Canonical order p1 >= p2; the mirrored optimum is reported alongside.
    PricePair p = best.prices;
    double alpha = best.eval.alpha;
    if (p.p1 < p.p2 - 1e-12) {
        p = p.swapped();
        alpha = 1.0 - alpha;
    }

    SolveResult out;
    out.contract = {p.p1, p.p2, alpha};
    out.value = best.eval.value;
    out.certificate_resolution = grid_n;

    const double h = h_value(env, p);
    if (std::abs(p.delta()) <= kDiagonalTol)
        out.regime = Regime::SymmetricDiagonal;
    else if (std::abs(h) <= kBoundaryTol)
        out.regime = Regime::AsymmetricBoundary;
    else
        out.regime = Regime::Interior;

    const AlphaInterval iv = alpha_interval(env, p);
    const bool b1 = !iv.empty && std::abs(alpha - iv.lo) <= kBindTol;
    const bool b2 = !iv.empty && std::abs(alpha - iv.hi) <= kBindTol;
    out.binding = b1 && b2 ? "ic1+ic2" : b1 ? "ic1" : b2 ? "ic2" : "none";

    const double clip = 1e-9;
    out.domain_restricted =
        h < -kBoundaryTol &&
        (p.p1 >= a - clip || p.p2 >= a - clip ||
         std::abs(p.delta()) >= (1.0 - a) - clip);

    if (std::abs(p.delta()) > kDiagonalTol) {
        out.has_mirror = true;
        out.mirror = {p.p2, p.p1, 1.0 - alpha};
    }
    return out;
}

CriticalThreshold critical_threshold(double s_lo, double s_hi) {
    if (!(s_lo > 0.0 && s_hi > s_lo && s_hi < 0.5))
        throw DomainError("critical_threshold: need 0 < s_lo < s_hi < 1/2");
    auto p_bar_gap = [&](double s) {
        return diagonal_roots(SearchEnv::from_cost(s)).high - kSqrt3Over3;
    };
    const double g_lo = p_bar_gap(s_lo);
    const double g_hi = p_bar_gap(s_hi);
    if ((g_lo > 0.0) == (g_hi > 0.0))
        throw NoBracket("critical_threshold: p_bar - sqrt(3)/3 does not change sign");
    const double s_star = bisect_root(p_bar_gap, s_lo, s_hi, 1e-8);
    CriticalThreshold out;
    out.s_star = s_star;
    out.a_star = threshold_from_cost(s_star);
    out.p_bar = diagonal_roots(SearchEnv::from_cost(s_star)).high;
    return out;
}

AttainabilityReport first_best_attainability_check(const SearchEnv& env) {
    AttainabilityReport report;
    report.first_best_value = first_best(env).value;
    report.constrained_value = solve(env, Objective::Profit, Direction::Max).value;
    report.gap = report.first_best_value - report.constrained_value;
    report.strict = report.gap > 1e-9;
    return report;
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::SymmetricDiagonal: return "symmetric_diagonal";
        case Regime::AsymmetricBoundary: return "asymmetric_boundary";
        case Regime::Interior: return "interior";
        case Regime::UnconstrainedFirstBest: return "unconstrained_first_best";
    }
    return "?";
}

const char* to_string(Objective objective) {
    switch (objective) {
        case Objective::Profit: return "profit";
        case Objective::TradeProb: return "tp";
        case Objective::Welfare: return "sw";
        case Objective::ConsumerSurplus: return "cs";
    }
    return "?";
}

const char* to_string(Direction direction) {
    return direction == Direction::Max ? "max" : "min";
}

Objective objective_from_string(const std::string& name) {
    if (name == "profit") return Objective::Profit;
    if (name == "tp") return Objective::TradeProb;
    if (name == "sw") return Objective::Welfare;
    if (name == "cs") return Objective::ConsumerSurplus;
    throw DomainError("unknown objective: " + name);
}

Direction direction_from_string(const std::string& name) {
    if (name == "max") return Direction::Max;
    if (name == "min") return Direction::Min;
    throw DomainError("unknown direction: " + name);
}

}  // namespace steer
