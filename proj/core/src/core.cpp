#include "predshare/core.hpp"

namespace predshare {

std::string_view to_string(Contract ct) {
  switch (ct) {
    case Contract::no_sharing:
      return "no-sharing";
    case Contract::train_sharing:
      return "train-sharing";
    case Contract::infer_sharing:
      return "infer-sharing";
    case Contract::full_sharing:
      return "full-sharing";
  }
  return "?";
}

std::optional<Contract> contract_from_string(std::string_view name) {
  if (name == "no-sharing" || name == "ns") return Contract::no_sharing;
  if (name == "train-sharing" || name == "ts") return Contract::train_sharing;
  if (name == "infer-sharing" || name == "is") return Contract::infer_sharing;
  if (name == "full-sharing" || name == "fs") return Contract::full_sharing;
  return std::nullopt;
}

UtilityParams significant_action(double reward1, double cost1) {
  if (!(reward1 > 0.0) || cost1 < 0.0) {
    throw model_error("significant-action utility needs reward1 > 0, cost1 >= 0");
  }
  return UtilityParams{0.0, reward1, 0.0, cost1};
}

UtilityParams symmetric_significant_action(double reward1) {
  return significant_action(reward1, reward1);
}

UtilityParams matching_recommendations() {
  return UtilityParams{1.0, 1.0, 0.0, 0.0};
}

double expost_utility(const UtilityParams& params, Action own, Label truth,
                      Action other) {
  const bool correct = static_cast<int>(own) == static_cast<int>(truth);
  double base;
  if (correct) {
    base = truth == Label::one ? params.reward1 : params.reward0;
  } else {
    base = own == Action::one ? -params.cost1 : -params.cost0;
  }
  return own == other ? base / 2.0 : base;
}

}  // namespace predshare
