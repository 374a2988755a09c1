#pragma once

#include <string>

#include "predshare/contracts.hpp"
#include "predshare/distributions.hpp"
#include "predshare/empirical.hpp"
#include "predshare/game.hpp"
#include "predshare/worlds.hpp"

namespace predshare {

// Eight data rows under a "X,x,t,prob" header; probabilities are written
// with 17 significant digits so a write/read cycle is exact. Loaders validate
// the parsed joint.
std::string joint_to_csv(const JointSignalDistribution& joint);
JointSignalDistribution joint_from_csv(const std::string& text);

// Flat object keyed by cell ("Aa1" .. "Bb0").
std::string joint_to_json(const JointSignalDistribution& joint);
JointSignalDistribution joint_from_json(const std::string& text);

std::string to_json(const BayesianGame& game);
std::string to_json(const PureStrategyProfile& profile);
std::string to_json(const ContractClassification& result);
std::string to_json(const FamilyValidationReport& report);
std::string to_json(const SweepTable& table);
std::string to_json(const TotalSharingTable& table);
std::string to_json(const BatteryResult& battery);

// Sweep rows as CSV with a leading "# seed=<seed>" comment line.
std::string sweep_to_csv(const SweepTable& table);
std::string total_sharing_to_csv(const TotalSharingTable& table);

}  // namespace predshare
