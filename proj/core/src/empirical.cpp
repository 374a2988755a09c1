#include "predshare/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "predshare/game.hpp"
#include "predshare/random.hpp"

namespace predshare {

namespace {

int rounded_count(double frac, int d) {
  return static_cast<int>(std::lround(frac * d));
}

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  if (x > 30.0) return x;
  return std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::string firm1_signal_id(bool high) { return high ? "A" : "B"; }
std::string firm2_signal_id(bool high) { return high ? "a" : "b"; }

std::string signal_pair_id(bool high1, bool high2) {
  return firm1_signal_id(high1) + firm2_signal_id(high2);
}

}  // namespace

int SyntheticDatasetSpec::pool_size() const {
  return rounded_count(epsilon, d);
}

int SyntheticDatasetSpec::firm_view_size(Firm firm) const {
  return rounded_count(firm == Firm::one ? firm1_frac : firm2_frac, d);
}

void SyntheticDatasetSpec::validate() const {
  if (d < 1) throw model_error("dataset: d must be >= 1");
  if (n_train < 1 || n_test < 1 || n_valid < 1) {
    throw model_error("dataset: every split needs at least one row");
  }
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw model_error("dataset: epsilon must lie in (0, 1]");
  }
  if (!(firm1_frac > 0.0) || firm1_frac > epsilon ||
      !(firm2_frac > 0.0) || firm2_frac > epsilon) {
    throw model_error("dataset: firm fractions must lie in (0, epsilon]");
  }
  if (pool_size() < 1 || firm_view_size(Firm::one) < 1 ||
      firm_view_size(Firm::two) < 1) {
    throw model_error("dataset: views round down to zero features");
  }
  if (!(label_model.noise >= 0.0)) {
    throw model_error("dataset: label noise must be >= 0");
  }
  if (!label_model.weights.empty() &&
      static_cast<int>(label_model.weights.size()) != d) {
    throw model_error("dataset: label weights must match d");
  }
}

Dataset generate_dataset(const SyntheticDatasetSpec& spec) {
  spec.validate();
  Dataset out;
  out.spec = spec;
  Rng rng(spec.seed);

  std::vector<double> label_weights = spec.label_model.weights;
  if (label_weights.empty()) {
    label_weights.resize(static_cast<std::size_t>(spec.d));
    for (double& w : label_weights) w = rng.normal();
  }

  const auto draw_subset = [&rng](const std::vector<int>& from, int k) {
    std::vector<int> perm = from;
    for (int i = static_cast<int>(perm.size()) - 1; i > 0; --i) {
      const int j =
          std::min(i, static_cast<int>(rng.uniform01() * (i + 1)));
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(j)]);
    }
    perm.resize(static_cast<std::size_t>(k));
    std::sort(perm.begin(), perm.end());
    return perm;
  };

  std::vector<int> all(static_cast<std::size_t>(spec.d));
  std::iota(all.begin(), all.end(), 0);
  out.pool = draw_subset(all, spec.pool_size());
  out.firm1_view = draw_subset(out.pool, spec.firm_view_size(Firm::one));
  out.firm2_view = draw_subset(out.pool, spec.firm_view_size(Firm::two));

  const auto draw_split = [&](int n) {
    DataSplit split;
    split.n = n;
    split.d = spec.d;
    split.features.resize(static_cast<std::size_t>(n) * spec.d);
    split.labels.resize(static_cast<std::size_t>(n));
    for (int row = 0; row < n; ++row) {
      double margin = 0.0;
      for (int col = 0; col < spec.d; ++col) {
        const double value = rng.normal();
        split.features[static_cast<std::size_t>(row) * spec.d + col] = value;
        margin += label_weights[static_cast<std::size_t>(col)] * value;
      }
      margin += spec.label_model.noise * rng.normal();
      split.labels[static_cast<std::size_t>(row)] = margin > 0.0 ? 1 : 0;
    }
    return split;
  };

  out.train = draw_split(spec.n_train);
  out.test = draw_split(spec.n_test);
  out.valid = draw_split(spec.n_valid);
  return out;
}

double LinearClassifier::score(const DataSplit& split, int row,
                               const std::vector<int>& view) const {
  if (weights.size() != view.size()) {
    throw model_error("classifier: weights do not match the view");
  }
  double s = bias;
  for (std::size_t j = 0; j < view.size(); ++j) {
    s += weights[j] * split.feature(row, view[j]);
  }
  return s;
}

bool LinearClassifier::signal(const DataSplit& split, int row,
                              const std::vector<int>& view) const {
  return score(split, row, view) > threshold;
}

LinearClassifier train_linear(const DataSplit& split,
                              const std::vector<int>& view, int epochs,
                              double rate) {
  if (epochs < 1) throw model_error("train_linear: epochs must be >= 1");
  if (split.n < 1) throw model_error("train_linear: empty split");
  if (!(rate > 0.0)) throw model_error("train_linear: rate must be > 0");
  const std::size_t k = view.size();
  const int n = split.n;

  std::vector<double> weights(k, 0.0);
  double bias = 0.0;

  const auto loss_of = [&](const std::vector<double>& w, double b) {
    double loss = 0.0;
    for (int row = 0; row < n; ++row) {
      double s = b;
      for (std::size_t j = 0; j < k; ++j) {
        s += w[j] * split.feature(row, view[static_cast<int>(j)]);
      }
      const double y = split.labels[static_cast<std::size_t>(row)] ? 1.0 : -1.0;
      loss += softplus(-y * s);
    }
    return loss / n;
  };

  double loss = loss_of(weights, bias);
  std::vector<double> grad(k);
  std::vector<double> trial(k);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (int row = 0; row < n; ++row) {
      double s = bias;
      for (std::size_t j = 0; j < k; ++j) {
        s += weights[j] * split.feature(row, view[static_cast<int>(j)]);
      }
      const double y = split.labels[static_cast<std::size_t>(row)] ? 1.0 : -1.0;
      const double pull = -y * sigmoid(-y * s);
      for (std::size_t j = 0; j < k; ++j) {
        grad[j] += pull * split.feature(row, view[static_cast<int>(j)]);
      }
      grad_bias += pull;
    }
    for (double& g : grad) g /= n;
    grad_bias /= n;

    bool stepped = false;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t j = 0; j < k; ++j) {
        trial[j] = weights[j] - rate * grad[j];
      }
      const double trial_bias = bias - rate * grad_bias;
      const double trial_loss = loss_of(trial, trial_bias);
      if (trial_loss <= loss + 1e-6) {
        weights = trial;
        bias = trial_bias;
        loss = trial_loss;
        stepped = true;
        break;
      }
      rate *= 0.5;
    }
    if (!stepped) break;
  }

  LinearClassifier model;
  model.weights = std::move(weights);
  model.bias = bias;
  return model;
}

long long EmpiricalStats::total() const {
  long long n = 0;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      for (int t = 0; t < 2; ++t) n += counts[s1][s2][t];
    }
  }
  return n;
}

double EmpiricalStats::alpha_hat(Label t) const {
  const int label = t == Label::one ? 1 : 0;
  const long long label_total = counts[0][0][label] + counts[0][1][label] +
                                counts[1][0][label] + counts[1][1][label];
  if (label_total == 0) {
    throw model_error("stats: no test rows with the requested label");
  }
  const long long correct = counts[label][0][label] + counts[label][1][label];
  return static_cast<double>(correct) / static_cast<double>(label_total);
}

double EmpiricalStats::beta_hat(Label t) const {
  const int label = t == Label::one ? 1 : 0;
  const long long label_total = counts[0][0][label] + counts[0][1][label] +
                                counts[1][0][label] + counts[1][1][label];
  if (label_total == 0) {
    throw model_error("stats: no test rows with the requested label");
  }
  const long long correct = counts[0][label][label] + counts[1][label][label];
  return static_cast<double>(correct) / static_cast<double>(label_total);
}

JointSignalDistribution EmpiricalStats::smoothed_joint() const {
  JointSignalDistribution joint;
  const double denom = static_cast<double>(total()) + 8.0;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      for (int t = 0; t < 2; ++t) {
        joint.cell[s1][s2][t] =
            (static_cast<double>(counts[s1][s2][t]) + 1.0) / denom;
      }
    }
  }
  return joint;
}

JointSignalDistribution EmpiricalStats::independence_joint() const {
  const JointSignalDistribution smoothed = smoothed_joint();
  JointSignalDistribution joint;
  for (int t = 0; t < 2; ++t) {
    const Label label = t ? Label::one : Label::zero;
    const double prior = smoothed.label_prior(label);
    const double p1 = smoothed.high_signal_given_label(Firm::one, label);
    const double p2 = smoothed.high_signal_given_label(Firm::two, label);
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        joint.cell[s1][s2][t] = prior * (s1 ? p1 : 1.0 - p1) *
                                (s2 ? p2 : 1.0 - p2);
      }
    }
  }
  return joint;
}

EmpiricalStats collect_stats(const Dataset& dataset,
                             const LinearClassifier& model1,
                             const LinearClassifier& model2) {
  EmpiricalStats stats;
  const DataSplit& test = dataset.test;
  for (int row = 0; row < test.n; ++row) {
    const int s1 = model1.signal(test, row, dataset.firm1_view) ? 1 : 0;
    const int s2 = model2.signal(test, row, dataset.firm2_view) ? 1 : 0;
    const int t = test.labels[static_cast<std::size_t>(row)];
    ++stats.counts[s1][s2][t];
  }
  return stats;
}

DecisionRulePair empirical_rules(Contract contract,
                                 const EmpiricalStats& stats,
                                 const UtilityParams& utility) {
  const bool shares_inference =
      contract == Contract::infer_sharing || contract == Contract::full_sharing;
  const bool shares_training =
      contract == Contract::train_sharing || contract == Contract::full_sharing;
  const JointSignalDistribution joint =
      shares_training ? stats.smoothed_joint() : stats.independence_joint();
  const BayesianGame game =
      game_from_joint(joint, shares_inference, shares_inference, utility);
  const std::vector<PureStrategyProfile> equilibria =
      enumerate_pure_equilibria(game);

  DecisionRulePair rules;
  if (equilibria.empty()) {
    rules.degenerate = true;
    return rules;
  }
  const PureStrategyProfile& pick = equilibria.back();
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      const std::string id1 = shares_inference
                                  ? signal_pair_id(s1 != 0, s2 != 0)
                                  : firm1_signal_id(s1 != 0);
      const std::string id2 = shares_inference
                                  ? signal_pair_id(s1 != 0, s2 != 0)
                                  : firm2_signal_id(s2 != 0);
      rules.firm1[s1][s2] = pick.s1.at(id1);
      rules.firm2[s1][s2] = pick.s2.at(id2);
    }
  }
  return rules;
}

const SweepRow& SweepTable::row(double cost, Contract contract,
                                Firm firm) const {
  for (const SweepRow& r : rows) {
    if (r.contract == contract && r.firm == firm &&
        std::abs(r.cost - cost) <= default_tolerance) {
      return r;
    }
  }
  throw model_error("sweep: no row for the requested cost");
}

std::vector<double> make_cost_grid(double max, double step) {
  if (!(step > 0.0) || max < 0.0) {
    throw model_error("cost grid: need step > 0 and max >= 0");
  }
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor(max / step + 1e-9));
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) grid.push_back(i * step);
  return grid;
}

SweepTable cost_sweep(const Dataset& dataset,
                      const std::vector<double>& c1_grid) {
  if (c1_grid.empty()) throw model_error("sweep: empty cost grid");
  const LinearClassifier model1 = train_linear(
      dataset.train, dataset.firm1_view, default_epochs, default_learning_rate);
  const LinearClassifier model2 = train_linear(
      dataset.train, dataset.firm2_view, default_epochs, default_learning_rate);
  const EmpiricalStats stats = collect_stats(dataset, model1, model2);

  const DataSplit& valid = dataset.valid;
  std::vector<int> signal1(static_cast<std::size_t>(valid.n));
  std::vector<int> signal2(static_cast<std::size_t>(valid.n));
  for (int row = 0; row < valid.n; ++row) {
    signal1[static_cast<std::size_t>(row)] =
        model1.signal(valid, row, dataset.firm1_view) ? 1 : 0;
    signal2[static_cast<std::size_t>(row)] =
        model2.signal(valid, row, dataset.firm2_view) ? 1 : 0;
  }

  SweepTable table;
  table.seed = dataset.spec.seed;
  table.costs = c1_grid;
  for (const double cost : c1_grid) {
    const UtilityParams utility = significant_action(1.0, cost);
    double value[4][2];
    for (const Contract contract : all_contracts) {
      const DecisionRulePair rules = empirical_rules(contract, stats, utility);
      double u1 = 0.0;
      double u2 = 0.0;
      for (int row = 0; row < valid.n; ++row) {
        const int s1 = signal1[static_cast<std::size_t>(row)];
        const int s2 = signal2[static_cast<std::size_t>(row)];
        const Label truth =
            valid.labels[static_cast<std::size_t>(row)] ? Label::one
                                                        : Label::zero;
        const Action a1 = rules.firm1[s1][s2];
        const Action a2 = rules.firm2[s1][s2];
        u1 += expost_utility(utility, a1, truth, a2);
        u2 += expost_utility(utility, a2, truth, a1);
      }
      value[static_cast<int>(contract)][0] = u1 / valid.n;
      value[static_cast<int>(contract)][1] = u2 / valid.n;
    }

    bool ir[4];
    const double* base = value[static_cast<int>(Contract::no_sharing)];
    for (const Contract contract : all_contracts) {
      const int c = static_cast<int>(contract);
      ir[c] = value[c][0] >= base[0] - default_tolerance &&
              value[c][1] >= base[1] - default_tolerance;
    }
    double best_welfare = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < 4; ++c) {
      if (ir[c]) best_welfare = std::max(best_welfare, value[c][0] + value[c][1]);
    }
    for (const Contract contract : all_contracts) {
      const int c = static_cast<int>(contract);
      const bool optimal =
          ir[c] && value[c][0] + value[c][1] >= best_welfare - default_tolerance;
      for (const Firm firm : {Firm::one, Firm::two}) {
        SweepRow row;
        row.cost = cost;
        row.contract = contract;
        row.firm = firm;
        row.utility = value[c][firm == Firm::one ? 0 : 1];
        row.ir = ir[c];
        row.optimal = optimal;
        table.rows.push_back(row);
      }
    }
  }
  return table;
}

TotalSharingTable total_sharing(const Dataset& dataset,
                                const std::vector<double>& c1_grid) {
  if (c1_grid.empty()) throw model_error("total sharing: empty cost grid");
  std::vector<int> union_view;
  std::set_union(dataset.firm1_view.begin(), dataset.firm1_view.end(),
                 dataset.firm2_view.begin(), dataset.firm2_view.end(),
                 std::back_inserter(union_view));
  const LinearClassifier model = train_linear(
      dataset.train, union_view, default_epochs, default_learning_rate);

  const DataSplit& valid = dataset.valid;
  std::vector<double> logit(static_cast<std::size_t>(valid.n));
  for (int row = 0; row < valid.n; ++row) {
    logit[static_cast<std::size_t>(row)] = model.score(valid, row, union_view);
  }

  TotalSharingTable table;
  table.seed = dataset.spec.seed;
  for (const double cost : c1_grid) {
    const UtilityParams utility = significant_action(1.0, cost);
    const double bar = cost > 0.0
                           ? std::log(cost)
                           : -std::numeric_limits<double>::infinity();
    double u = 0.0;
    for (int row = 0; row < valid.n; ++row) {
      const Action action =
          logit[static_cast<std::size_t>(row)] >= bar ? Action::one
                                                      : Action::zero;
      const Label truth = valid.labels[static_cast<std::size_t>(row)]
                              ? Label::one
                              : Label::zero;
      u += expost_utility(utility, action, truth, action);
    }
    table.rows.push_back(TotalSharingRow{cost, u / valid.n});
  }
  return table;
}

double matthews_correlation(const std::vector<int>& preds1,
                            const std::vector<int>& preds2) {
  if (preds1.size() != preds2.size()) {
    throw model_error("matthews: length mismatch");
  }
  if (preds1.empty()) throw model_error("matthews: empty input");
  double m[2][2] = {};
  for (std::size_t i = 0; i < preds1.size(); ++i) {
    ++m[preds1[i] ? 1 : 0][preds2[i] ? 1 : 0];
  }
  const double row1 = m[1][0] + m[1][1];
  const double row0 = m[0][0] + m[0][1];
  const double col1 = m[0][1] + m[1][1];
  const double col0 = m[0][0] + m[1][0];
  const double denom = row1 * row0 * col1 * col0;
  if (denom <= 0.0) return 0.0;
  return (m[1][1] * m[0][0] - m[1][0] * m[0][1]) / std::sqrt(denom);
}

std::array<double, 4> optimality_frequency(const SweepTable& table,
                                           double c_min, double c_max) {
  std::array<double, 4> frequency{};
  int covered = 0;
  for (const double cost : table.costs) {
    if (cost < c_min - default_tolerance || cost > c_max + default_tolerance) {
      continue;
    }
    ++covered;
    double value[4][2];
    bool optimal[4];
    for (const Contract contract : all_contracts) {
      const int c = static_cast<int>(contract);
      value[c][0] = table.row(cost, contract, Firm::one).utility;
      value[c][1] = table.row(cost, contract, Firm::two).utility;
      optimal[c] = table.row(cost, contract, Firm::one).optimal;
    }
    const auto ties = [&](int a, int b) {
      return std::abs(value[a][0] - value[b][0]) <= default_tolerance &&
             std::abs(value[a][1] - value[b][1]) <= default_tolerance;
    };
    // Ties go to the plainer contract: drop anything matching an optimal
    // no-sharing row, then train/infer rows matching an optimal full-sharing
    // row.
    const int ns = static_cast<int>(Contract::no_sharing);
    const int ts = static_cast<int>(Contract::train_sharing);
    const int is = static_cast<int>(Contract::infer_sharing);
    const int fs = static_cast<int>(Contract::full_sharing);
    if (optimal[ns]) {
      for (const int c : {ts, is, fs}) {
        if (optimal[c] && ties(c, ns)) optimal[c] = false;
      }
    }
    if (optimal[fs]) {
      for (const int c : {ts, is}) {
        if (optimal[c] && ties(c, fs)) optimal[c] = false;
      }
    }
    int winners = 0;
    for (const bool flag : optimal) winners += flag ? 1 : 0;
    if (winners == 0) throw model_error("optimality frequency: no IR contract");
    for (int c = 0; c < 4; ++c) {
      if (optimal[c]) frequency[static_cast<std::size_t>(c)] += 1.0 / winners;
    }
  }
  if (covered == 0) {
    throw model_error("optimality frequency: no grid point in range");
  }
  for (double& f : frequency) f /= covered;
  return frequency;
}

BatteryResult run_battery(const SyntheticDatasetSpec& base,
                          const std::vector<double>& epsilons,
                          const std::vector<std::uint64_t>& seeds) {
  if (epsilons.empty() || seeds.empty()) {
    throw model_error("battery: need at least one epsilon and one seed");
  }
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.5 + 0.05 * i);

  BatteryResult out;
  for (const double epsilon : epsilons) {
    for (const std::uint64_t seed : seeds) {
      SyntheticDatasetSpec spec = base;
      spec.epsilon = epsilon;
      spec.firm1_frac = std::min(spec.firm1_frac, epsilon);
      spec.firm2_frac = std::min(spec.firm2_frac, epsilon);
      spec.seed = seed;
      const Dataset dataset = generate_dataset(spec);
      const SweepTable sweep = cost_sweep(dataset, grid);

      const LinearClassifier model1 =
          train_linear(dataset.train, dataset.firm1_view, default_epochs,
                       default_learning_rate);
      const LinearClassifier model2 =
          train_linear(dataset.train, dataset.firm2_view, default_epochs,
                       default_learning_rate);
      std::vector<int> signal1(static_cast<std::size_t>(dataset.valid.n));
      std::vector<int> signal2(static_cast<std::size_t>(dataset.valid.n));
      for (int row = 0; row < dataset.valid.n; ++row) {
        signal1[static_cast<std::size_t>(row)] =
            model1.signal(dataset.valid, row, dataset.firm1_view) ? 1 : 0;
        signal2[static_cast<std::size_t>(row)] =
            model2.signal(dataset.valid, row, dataset.firm2_view) ? 1 : 0;
      }

      BatteryCell cell;
      cell.epsilon = epsilon;
      cell.seed = seed;
      cell.frequency = optimality_frequency(sweep, 0.5, 1.5);
      cell.signal_agreement = matthews_correlation(signal1, signal2);
      out.cells.push_back(cell);
    }
  }
  return out;
}

}  // namespace predshare
