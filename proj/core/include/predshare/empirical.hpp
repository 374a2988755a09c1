#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "predshare/contracts.hpp"
#include "predshare/core.hpp"
#include "predshare/distributions.hpp"

namespace predshare {

// Seed for the shipped default experiment; chosen so the default run
// exhibits both a full-sharing-optimal and a no-sharing-optimal cost regime.
inline constexpr std::uint64_t default_empirical_seed = 5;

// Ground-truth labels: indicator(weights . features + noise * gaussian > 0).
// Empty weights are drawn standard-normal from the dataset seed.
struct LabelModel {
  std::vector<double> weights;
  double noise = 1.0;
};

struct SyntheticDatasetSpec {
  int n_train = 2400;
  int n_test = 800;
  int n_valid = 800;
  int d = 40;
  LabelModel label_model;
  double firm1_frac = 0.25;
  double firm2_frac = 0.10;
  double epsilon = 0.55;  // fraction of features in the shared pool
  std::uint64_t seed = default_empirical_seed;

  int pool_size() const;
  int firm_view_size(Firm firm) const;
  void validate() const;
};

struct DataSplit {
  int n = 0;
  int d = 0;
  std::vector<double> features;  // row-major n x d
  std::vector<int> labels;

  double feature(int row, int col) const {
    return features[static_cast<std::size_t>(row) * d + col];
  }
};

struct Dataset {
  SyntheticDatasetSpec spec;
  std::vector<int> pool;        // shared feature pool, sorted
  std::vector<int> firm1_view;  // sorted subsets of the pool
  std::vector<int> firm2_view;
  DataSplit train;
  DataSplit test;
  DataSplit valid;
};

Dataset generate_dataset(const SyntheticDatasetSpec& spec);

struct LinearClassifier {
  std::vector<double> weights;  // parallel to the training view
  double bias = 0.0;
  double threshold = 0.0;

  double score(const DataSplit& split, int row,
               const std::vector<int>& view) const;
  // High signal (A / a) iff score exceeds the threshold.
  bool signal(const DataSplit& split, int row,
              const std::vector<int>& view) const;
};

// Full-batch logistic-loss gradient descent from zero weights. The training
// loss is non-increasing across epochs (the step is backtracked when it
// overshoots). Throws model_error when epochs < 1.
LinearClassifier train_linear(const DataSplit& split,
                              const std::vector<int>& view, int epochs,
                              double rate);

inline constexpr int default_epochs = 200;
inline constexpr double default_learning_rate = 0.5;

// Joint signal/label counts on the test split.
struct EmpiricalStats {
  long long counts[2][2][2] = {};  // [firm-1 signal][firm-2 signal][label]

  long long total() const;
  // Fraction of label-t test points where the firm's signal is correct.
  double alpha_hat(Label t) const;
  double beta_hat(Label t) const;
  // Add-one-smoothed empirical joint, (count + 1) / (total + 8).
  JointSignalDistribution smoothed_joint() const;
  // Per-label independence product with the smoothed label priors.
  JointSignalDistribution independence_joint() const;
};

EmpiricalStats collect_stats(const Dataset& dataset,
                             const LinearClassifier& model1,
                             const LinearClassifier& model2);

// Both firms' contract decision rules over the signal pair. A firm that
// cannot see the other's signal plays a rule constant in it. When the
// empirical game has no pure equilibrium the pair degenerates to all-zeros
// and is flagged.
struct DecisionRulePair {
  Action firm1[2][2] = {};  // [firm-1 signal][firm-2 signal]
  Action firm2[2][2] = {};
  bool degenerate = false;
};

DecisionRulePair empirical_rules(Contract contract,
                                 const EmpiricalStats& stats,
                                 const UtilityParams& utility);

struct SweepRow {
  double cost = 0.0;
  Contract contract = Contract::no_sharing;
  Firm firm = Firm::one;
  double utility = 0.0;
  bool ir = false;       // at least the no-sharing utility, both firms
  bool optimal = false;  // welfare-optimal among the IR contracts
};

struct SweepTable {
  std::uint64_t seed = 0;
  std::vector<double> costs;
  std::vector<SweepRow> rows;  // two per contract per cost

  const SweepRow& row(double cost, Contract contract, Firm firm) const;
};

// Grid 0, step, 2*step, ... up to max (inclusive).
std::vector<double> make_cost_grid(double max, double step);

// Classifiers are trained once; per cost, decision rules are rebuilt from
// the test-split stats and scored on the validation split.
SweepTable cost_sweep(const Dataset& dataset,
                      const std::vector<double>& c1_grid);

struct TotalSharingRow {
  double cost = 0.0;
  double utility = 0.0;  // per firm; both firms act identically
};

struct TotalSharingTable {
  std::uint64_t seed = 0;
  std::vector<TotalSharingRow> rows;
};

// One model on the union of both views; it acts when its logit clears
// log(c1), and the reward is split between the firms.
TotalSharingTable total_sharing(const Dataset& dataset,
                                const std::vector<double>& c1_grid);

// Matthews coefficient of the 2x2 agreement matrix; 0 when a marginal is
// degenerate. Throws model_error on length mismatch or empty input.
double matthews_correlation(const std::vector<int>& preds1,
                            const std::vector<int>& preds2);

// Share of costs in [c_min, c_max] where each contract is the optimal IR
// choice, with ties credited to the plainer contract (no-sharing first,
// then full-sharing) and remaining ties split equally.
std::array<double, 4> optimality_frequency(const SweepTable& table,
                                           double c_min = 0.5,
                                           double c_max = 1.5);

struct BatteryCell {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::array<double, 4> frequency{};
  double signal_agreement = 0.0;  // Matthews correlation of the two firms'
                                  // validation signals
};

struct BatteryResult {
  std::vector<BatteryCell> cells;
};

inline constexpr std::array<double, 6> default_epsilons{1.0, 0.85, 0.7,
                                                        0.55, 0.4, 0.25};

// Default reduced battery: every epsilon crossed with consecutive seeds
// starting at base.seed.
BatteryResult run_battery(const SyntheticDatasetSpec& base,
                          const std::vector<double>& epsilons,
                          const std::vector<std::uint64_t>& seeds);

}  // namespace predshare
