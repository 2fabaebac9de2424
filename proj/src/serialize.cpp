#include "steer/serialize.hpp"

#include <cmath>
#include <limits>

#include "steer/errors.hpp"

namespace steer {
namespace {

double number_or_nan(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

nlohmann::json nan_to_null(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

}  // namespace

void to_json(nlohmann::json& j, const AlphaInterval& iv) {
    j = {{"lo", iv.lo}, {"hi", iv.hi}, {"empty", iv.empty}};
}

void from_json(const nlohmann::json& j, AlphaInterval& iv) {
    iv.lo = j.at("lo").get<double>();
    iv.hi = j.at("hi").get<double>();
    iv.empty = j.at("empty").get<bool>();
}

void to_json(nlohmann::json& j, const Contract& c) {
    j = {{"p1", c.p1}, {"p2", c.p2}, {"alpha", c.alpha}};
}

void from_json(const nlohmann::json& j, Contract& c) {
    c.p1 = j.at("p1").get<double>();
    c.p2 = j.at("p2").get<double>();
    c.alpha = j.at("alpha").get<double>();
}

void to_json(nlohmann::json& j, const SolveResult& r) {
    j = {{"p1", r.contract.p1},
         {"p2", r.contract.p2},
         {"alpha", r.contract.alpha},
         {"value", r.value},
         {"regime", to_string(r.regime)},
         {"binding", r.binding},
         {"certificate_resolution", r.certificate_resolution},
         {"domain_restricted", r.domain_restricted}};
    if (r.has_mirror) j["mirror"] = r.mirror;
}

void from_json(const nlohmann::json& j, SolveResult& r) {
    r.contract.p1 = j.at("p1").get<double>();
    r.contract.p2 = j.at("p2").get<double>();
    r.contract.alpha = j.at("alpha").get<double>();
    r.value = j.at("value").get<double>();
    r.regime = regime_from_string(j.at("regime").get<std::string>());
    r.binding = j.at("binding").get<std::string>();
    r.certificate_resolution = j.at("certificate_resolution").get<int>();
    r.domain_restricted = j.at("domain_restricted").get<bool>();
    r.has_mirror = j.contains("mirror");
    if (r.has_mirror) r.mirror = j.at("mirror").get<Contract>();
}

void to_json(nlohmann::json& j, const RankEstimate& e) {
    j = {{"estimate", nan_to_null(e.estimate)},
         {"se", nan_to_null(e.se)},
         {"trials", e.trials}};
}

void from_json(const nlohmann::json& j, RankEstimate& e) {
    e.estimate = number_or_nan(j.at("estimate"));
    e.se = number_or_nan(j.at("se"));
    e.trials = j.at("trials").get<std::int64_t>();
}

void to_json(nlohmann::json& j, const EmpiricalOutcome& o) {
    j = {{"d11", o.d11},
         {"d12", o.d12},
         {"d21", o.d21},
         {"d22", o.d22},
         {"demand1", o.demand1},
         {"demand1_se", o.demand1_se},
         {"demand2", o.demand2},
         {"demand2_se", o.demand2_se},
         {"profit", o.profit},
         {"profit_se", o.profit_se},
         {"sw", o.sw},
         {"sw_se", o.sw_se},
         {"cs", o.cs},
         {"cs_se", o.cs_se},
         {"trade_prob", o.trade_prob},
         {"trade_prob_se", o.trade_prob_se},
         {"consumers", o.consumers},
         {"seed", o.seed}};
}

void from_json(const nlohmann::json& j, EmpiricalOutcome& o) {
    o.d11 = j.at("d11").get<RankEstimate>();
    o.d12 = j.at("d12").get<RankEstimate>();
    o.d21 = j.at("d21").get<RankEstimate>();
    o.d22 = j.at("d22").get<RankEstimate>();
    o.demand1 = j.at("demand1").get<double>();
    o.demand1_se = j.at("demand1_se").get<double>();
    o.demand2 = j.at("demand2").get<double>();
    o.demand2_se = j.at("demand2_se").get<double>();
    o.profit = j.at("profit").get<double>();
    o.profit_se = j.at("profit_se").get<double>();
    o.sw = j.at("sw").get<double>();
    o.sw_se = j.at("sw_se").get<double>();
    o.cs = j.at("cs").get<double>();
    o.cs_se = j.at("cs_se").get<double>();
    o.trade_prob = j.at("trade_prob").get<double>();
    o.trade_prob_se = j.at("trade_prob_se").get<double>();
    o.consumers = j.at("consumers").get<std::int64_t>();
    o.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = {{"is_equilibrium", r.is_equilibrium},
         {"deviation1", {{"price", r.best_deviation_1.price}, {"gain", r.best_deviation_1.gain}}},
         {"deviation2", {{"price", r.best_deviation_2.price}, {"gain", r.best_deviation_2.gain}}},
         {"grid_n", r.grid_n},
         {"tol", r.tol}};
}

void from_json(const nlohmann::json& j, VerificationReport& r) {
    r.is_equilibrium = j.at("is_equilibrium").get<bool>();
    r.best_deviation_1.price = j.at("deviation1").at("price").get<double>();
    r.best_deviation_1.gain = j.at("deviation1").at("gain").get<double>();
    r.best_deviation_2.price = j.at("deviation2").at("price").get<double>();
    r.best_deviation_2.gain = j.at("deviation2").at("gain").get<double>();
    r.grid_n = j.at("grid_n").get<long>();
    r.tol = j.at("tol").get<double>();
}

Regime regime_from_string(const std::string& name) {
    if (name == "symmetric_diagonal") return Regime::SymmetricDiagonal;
    if (name == "asymmetric_boundary") return Regime::AsymmetricBoundary;
    if (name == "interior") return Regime::Interior;
    if (name == "unconstrained_first_best") return Regime::UnconstrainedFirstBest;
    throw DomainError("unknown regime: " + name);
}

}  // namespace steer
