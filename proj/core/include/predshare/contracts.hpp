#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "predshare/core.hpp"
#include "predshare/distributions.hpp"
#include "predshare/game.hpp"

namespace predshare {

// Both firms learn their signal model from unbounded training data, so each
// firm's training reduces to which hypothesis generated it (firm 1) or to
// nothing (firm 2, whose marginals coincide across hypotheses).
struct TwoHypInfiniteModel {
  TwoHypothesesSpec spec;
};

// Each firm trains on its own coordinate of a single shared sample.
struct TwoHypOneSampleModel {
  TwoHypothesesSpec spec;
};

using ModelSpec =
    std::variant<CorrelationModelSpec, TwoHypInfiniteModel,
                 TwoHypOneSampleModel>;

void validate(const ModelSpec& model);

// The Bayesian game induced by the model under one sharing contract.
BayesianGame build_game(const ModelSpec& model, Contract contract);

// Game over a single known 8-cell joint. Each firm observes its own test
// signal, plus the opponent's when the corresponding flag is set. Infoset
// ids match the no-sharing correlation game (A,B / a,b) or the signal pair
// (Aa..Bb) for a firm that sees both.
BayesianGame game_from_joint(const JointSignalDistribution& joint,
                             bool firm1_sees_other, bool firm2_sees_other,
                             UtilityParams utility);

// Contract ct Pareto dominates ct_prime: at every positive-probability pair
// of training components there is an equilibrium of ct whose interim
// utilities weakly dominate those of every equilibrium of ct_prime, firm by
// firm. Throws model_error when either contract has no pure equilibrium.
bool pareto_dominates(const ModelSpec& model, Contract ct, Contract ct_prime);

struct EquilibriumValues {
  std::array<double, 2> exante{};
  // Per firm: training component id -> interim utility.
  std::array<std::map<std::string, double>, 2> interim;
};

struct ContractOutcome {
  std::vector<PureStrategyProfile> equilibria;
  std::vector<EquilibriumValues> values;  // parallel to equilibria
};

struct ContractClassification {
  std::array<ContractOutcome, 4> outcomes;  // indexed by Contract value
  // dominates[ct][ct']: ct Pareto dominates ct'. False whenever either side
  // has no pure equilibrium (see warnings).
  std::array<std::array<bool, 4>, 4> dominates{};
  std::vector<Contract> ir_set;
  std::vector<Contract> pareto_optimal_set;
  std::vector<Contract> irpo_set;
  std::optional<Contract> uniquely_irpo;
  std::vector<std::string> warnings;
};

// Full IR / Pareto-optimal / IRPO classification. A contract is IR when it is
// no-sharing or dominates no-sharing; Pareto optimal when no contract
// strictly dominates it, except that train-sharing and infer-sharing drop out
// when equivalent to the plainer no-sharing or full-sharing contract; IRPO is
// the intersection.
ContractClassification classify(const ModelSpec& model);

enum class Regime : int { high_beta, low_beta };

// The closed-form secondary-firm threshold has two published readings; the
// derivation supports comparing the net 3*beta - alpha - 1 against zero,
// which is the default. unit_margin compares it against one instead.
enum class SecondaryThresholdRule : int { nonnegative_net, unit_margin };

struct KnownCorrClosedForm {
  Regime regime = Regime::high_beta;
  double u1 = 0.0;
  double u2 = 0.0;
  PureStrategyProfile strategies;  // over the no-sharing infosets A,B / a,b
};

// Closed-form no-sharing equilibrium for a known correlation and symmetric
// significant-action utilities; independent of the correlation level.
KnownCorrClosedForm known_corr_closed_form(
    double alpha, double beta,
    SecondaryThresholdRule rule = SecondaryThresholdRule::nonnegative_net);

// Closed-form per-firm full-sharing utility in the same setting.
double known_corr_full_sharing_utility(double alpha);

struct KnownIndependentFullSharingConditions {
  bool fs_threshold_ok = false;    // full-sharing rule follows firm 1 only
  bool ns_eq_ok = false;           // both firms follow their own signal
  bool utility_ordering_ok = false;  // u2_ns <= u1_ns <= u1_fs
  bool fs_uniquely_irpo = false;   // cross-check via classify
};

// The closed-form condition groups under which full-sharing is uniquely IRPO
// for known independent signals and significant-action utilities with
// reward 1 and cost c1.
KnownIndependentFullSharingConditions
known_independent_full_sharing_conditions(double alpha, double beta,
                                          double c1);

}  // namespace predshare
