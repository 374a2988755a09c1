#pragma once

#include <map>
#include <string>
#include <vector>

#include "predshare/core.hpp"

namespace predshare {

// One world outcome: probability, each firm's action-stage information-set
// id, the label, and each firm's training-component id.
struct GameAtom {
  double prob = 0.0;
  std::string infoset1;
  std::string infoset2;
  Label label = Label::zero;
  std::string train1;
  std::string train2;
};

// Finite two-firm Bayesian game. Immutable after construction;
// zero-probability atoms are dropped at build time, so every infoset that
// survives carries positive mass.
class BayesianGame {
 public:
  // Throws model_error on negative probabilities, masses not summing to one,
  // or an infoset spanning two training components.
  BayesianGame(std::vector<GameAtom> atoms, UtilityParams utility);

  const std::vector<GameAtom>& atoms() const { return atoms_; }
  const UtilityParams& utility() const { return utility_; }

  // Sorted distinct infoset ids of the firm.
  const std::vector<std::string>& infosets(Firm firm) const;
  // Sorted distinct training-component ids of the firm.
  const std::vector<std::string>& train_components(Firm firm) const;

 private:
  std::vector<GameAtom> atoms_;
  UtilityParams utility_;
  std::vector<std::string> infosets_[2];
  std::vector<std::string> train_components_[2];
};

// A pure strategy maps every one of a firm's infosets to an action.
using PureStrategy = std::map<std::string, Action>;

struct PureStrategyProfile {
  PureStrategy s1;
  PureStrategy s2;

  const PureStrategy& of(Firm firm) const {
    return firm == Firm::one ? s1 : s2;
  }
  auto operator<=>(const PureStrategyProfile&) const = default;
};

// Expected utility of playing `action` at `infoset`, conditioned on that
// infoset, with the opponent playing `opp_strategy`. Throws model_error when
// the infoset is unknown or the opponent strategy is not total.
double conditional_utility(const BayesianGame& game, Firm firm,
                           const std::string& infoset, Action action,
                           const PureStrategy& opp_strategy);

// All per-infoset best responses to opp_strategy; ties within the tolerance
// admit both actions, so the result is a Cartesian product over infosets.
std::vector<PureStrategy> best_responses(
    const BayesianGame& game, Firm firm, const PureStrategy& opp_strategy,
    double tolerance = default_tolerance);

// Exact set of pure equilibria, lexicographically sorted. Decomposes the game
// into common-knowledge cells (infosets linked by shared atoms) and
// recombines per-cell equilibria. Throws capacity_error when a cell has more
// than 16 infosets for either firm.
std::vector<PureStrategyProfile> enumerate_pure_equilibria(
    const BayesianGame& game, double tolerance = default_tolerance);

// Reference enumeration checking every strategy pair; exponential in the
// infoset counts, intended for cross-checks on small games only.
std::vector<PureStrategyProfile> enumerate_pure_equilibria_naive(
    const BayesianGame& game, double tolerance = default_tolerance);

// Expected utility conditioned on the firm's training component.
double interim_utility(const BayesianGame& game,
                       const PureStrategyProfile& profile, Firm firm,
                       const std::string& train_component);

// Unconditional expected utility.
double exante_utility(const BayesianGame& game,
                      const PureStrategyProfile& profile, Firm firm);

}  // namespace predshare
