#pragma once

#include <json.hpp>

#include "steer/corner.hpp"
#include "steer/market_sim.hpp"
#include "steer/objectives.hpp"

// JSON bindings for the records exposed by the library's file interfaces.
// NaN estimates (zero-trial conditional demands) serialize as null.

namespace steer {

void to_json(nlohmann::json& j, const AlphaInterval& iv);
void from_json(const nlohmann::json& j, AlphaInterval& iv);

void to_json(nlohmann::json& j, const Contract& c);
void from_json(const nlohmann::json& j, Contract& c);

void to_json(nlohmann::json& j, const SolveResult& r);
void from_json(const nlohmann::json& j, SolveResult& r);

void to_json(nlohmann::json& j, const RankEstimate& e);
void from_json(const nlohmann::json& j, RankEstimate& e);

void to_json(nlohmann::json& j, const EmpiricalOutcome& o);
void from_json(const nlohmann::json& j, EmpiricalOutcome& o);

void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

Regime regime_from_string(const std::string& name);

}  // namespace steer
