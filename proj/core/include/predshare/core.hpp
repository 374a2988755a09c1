#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace predshare {

// Comparison tolerance for equilibrium ties and dominance checks.
inline constexpr double default_tolerance = 1e-9;
// Tolerance for probability-mass bookkeeping (sums to one, identities).
inline constexpr double mass_tolerance = 1e-12;

enum class Action : std::uint8_t { zero = 0, one = 1 };
enum class Label : std::uint8_t { zero = 0, one = 1 };

enum class Firm : std::uint8_t { one = 0, two = 1 };

inline constexpr Firm other_firm(Firm f) {
  return f == Firm::one ? Firm::two : Firm::one;
}

// The four prediction-sharing contracts.
enum class Contract : std::uint8_t {
  no_sharing = 0,
  train_sharing = 1,
  infer_sharing = 2,
  full_sharing = 3,
};

inline constexpr std::array<Contract, 4> all_contracts{
    Contract::no_sharing, Contract::train_sharing, Contract::infer_sharing,
    Contract::full_sharing};

std::string_view to_string(Contract ct);
std::optional<Contract> contract_from_string(std::string_view name);

// Ex-post utility parameters. Rewards are paid for a correct action with the
// matching index; costs are charged (as nonnegative magnitudes) for a wrong
// action with the index of the action taken.
struct UtilityParams {
  double reward0 = 0.0;
  double reward1 = 0.0;
  double cost0 = 0.0;
  double cost1 = 0.0;
};

// The risky action 1 earns reward1 when right and pays cost1 when wrong;
// action 0 is safe and worth nothing either way.
UtilityParams significant_action(double reward1, double cost1);
// Significant action with cost1 == reward1.
UtilityParams symmetric_significant_action(double reward1);
// Every correct action earns 1; mistakes are free.
UtilityParams matching_recommendations();

// Utility of taking `own` when the label is `truth` and the other firm takes
// `other`: the base value is halved when both firms act identically.
double expost_utility(const UtilityParams& params, Action own, Label truth,
                      Action other);

// A requested distribution cannot be realized (e.g. a correlation outside the
// feasible range produces a negative probability cell).
struct feasibility_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A model specification violates its own invariants.
struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A game is too large for exhaustive equilibrium enumeration.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace predshare
