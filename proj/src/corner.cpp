#include "steer/corner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "steer/best_response.hpp"
#include "steer/errors.hpp"

namespace steer {
namespace {

// Intersects a raw [lo, hi] candidate with [0,1]; empty when the raw
// interval is inverted or misses the unit interval entirely.
AlphaInterval make_interval(double lo, double hi) {
    if (!(lo <= hi) || hi < 0.0 || lo > 1.0) return {};
    AlphaInterval out;
    out.lo = std::clamp(lo, 0.0, 1.0);
    out.hi = std::clamp(hi, 0.0, 1.0);
    out.empty = false;
    return out;
}

}  // namespace

CornerRegime classify_corner(const SearchEnv& env, const PricePair& prices) {
    const bool above1 = prices.p1 >= env.threshold;
    const bool above2 = prices.p2 >= env.threshold;
    if (above1 && above2) return CornerRegime::BothAbove;
    if (above1) return CornerRegime::P1Above;
    if (above2) return CornerRegime::P2Above;
    return CornerRegime::BothBelow;
}

const char* to_string(CornerRegime regime) {
    switch (regime) {
        case CornerRegime::BothBelow: return "both_below";
        case CornerRegime::P1Above: return "p1_above";
        case CornerRegime::P2Above: return "p2_above";
        case CornerRegime::BothAbove: return "both_above";
    }
    return "?";
}

double monopoly_first_profit(const SearchEnv& env, double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("monopoly_first_profit: price outside [0,1]");
    return p * (1.0 - env.dist.F(p));
}

AlphaInterval corner_alpha_interval(const SearchEnv& env, const PricePair& prices) {
    if (!env.uniform()) throw DomainError("corner_alpha_interval: requires Uniform01");
    const CornerRegime regime = classify_corner(env, prices);
    if (regime == CornerRegime::BothBelow)
        throw WrongRegime("corner_alpha_interval: both prices below A");
    if (prices.p1 > 1.0 || prices.p2 > 1.0)
        throw DomainError("corner_alpha_interval: prices above 1");

    const double p1 = prices.p1, p2 = prices.p2;
    const double max_pi1 = best_deviation(env, p2).profit;
    const double max_pi2 = best_deviation(env, p1).profit;

    if (regime == CornerRegime::BothAbove) {
        const double hat1 = monopoly_first_profit(env, p1);
        const double hat2 = monopoly_first_profit(env, p2);
        if (hat1 <= 0.0 || hat2 <= 0.0) return {};
        return make_interval(max_pi1 / hat1, 1.0 - max_pi2 / hat2);
    }

    // One price above A: the high seller keeps only its rank-one profit
    // (its rank-two demand is zero) and the rival's rank-one profit
    // truncates to the monopoly form.
    const bool p1_high = (regime == CornerRegime::P1Above);
    const double high = p1_high ? p1 : p2;
    const double low = p1_high ? p2 : p1;
    const double max_pi_high = p1_high ? max_pi1 : max_pi2;
    const double max_pi_low = p1_high ? max_pi2 : max_pi1;

    const double pi_high_first = high * first_rank_demand(env, high, low);
    const double pi_low_second = low * second_rank_demand(env, low, high);
    const double hat_low_first = monopoly_first_profit(env, low);
    if (pi_high_first <= 0.0) return {};
    const double denom = hat_low_first - pi_low_second;
    if (denom <= 0.0) return {};

    const double share_high = max_pi_high / pi_high_first;
    const double share_low = (max_pi_low - pi_low_second) / denom;
    if (p1_high) return make_interval(share_high, 1.0 - share_low);
    // Mirrored constraints: alpha is still the probability seller 1 is first.
    return make_interval(share_low, 1.0 - share_high);
}

bool hat_contains(const SearchEnv& env, const PricePair& prices) {
    if (classify_corner(env, prices) == CornerRegime::BothBelow)
        return contains(env, prices);
    return !corner_alpha_interval(env, prices).empty;
}

std::vector<CornerSweepRow> corner_sweep(const SearchEnv& env, int n) {
    if (n < 2) throw DomainError("corner_sweep: need n >= 2");
    std::vector<CornerSweepRow> rows;
    rows.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CornerSweepRow row;
            row.prices = {(i + 0.5) / n, (j + 0.5) / n};
            row.regime = classify_corner(env, row.prices);
            row.in_plain = contains(env, row.prices);
            row.in_hat = hat_contains(env, row.prices);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string corner_sweep_to_csv(const std::vector<CornerSweepRow>& rows) {
    std::ostringstream out;
    out << "p1,p2,in_plain,in_hat,regime\n";
    char buf[160];
    for (const CornerSweepRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%d,%s\n", row.prices.p1,
                      row.prices.p2, row.in_plain ? 1 : 0, row.in_hat ? 1 : 0,
                      to_string(row.regime));
        out << buf;
    }
    return out.str();
}

std::vector<CornerSweepRow> corner_sweep_from_csv(const std::string& csv) {
    std::vector<CornerSweepRow> rows;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::istringstream cells(line);
        std::string p1, p2, plain, hat, regime;
        if (!std::getline(cells, p1, ',') || !std::getline(cells, p2, ',') ||
            !std::getline(cells, plain, ',') || !std::getline(cells, hat, ',') ||
            !std::getline(cells, regime))
            throw DomainError("corner_sweep_from_csv: malformed row: " + line);
        CornerSweepRow row;
        row.prices = {std::stod(p1), std::stod(p2)};
        row.in_plain = plain == "1";
        row.in_hat = hat == "1";
        if (regime == "both_below") row.regime = CornerRegime::BothBelow;
        else if (regime == "p1_above") row.regime = CornerRegime::P1Above;
        else if (regime == "p2_above") row.regime = CornerRegime::P2Above;
        else if (regime == "both_above") row.regime = CornerRegime::BothAbove;
        else throw DomainError("corner_sweep_from_csv: unknown regime: " + regime);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace steer
