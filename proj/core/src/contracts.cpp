#include "predshare/contracts.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <type_traits>
#include <utility>

namespace predshare {

namespace {

char firm1_char(int s) { return s == 1 ? 'A' : 'B'; }
char firm2_char(int s) { return s == 1 ? 'a' : 'b'; }

std::string pair_id(int s1, int s2) {
  return std::string{firm1_char(s1), firm2_char(s2)};
}

std::string sample_id(int s1, int s2, int t) {
  return std::string{firm1_char(s1), firm2_char(s2), char('0' + t)};
}

Label to_label(int t) { return t == 1 ? Label::one : Label::zero; }

BayesianGame build_correlation_game(const CorrelationModelSpec& spec,
                                    Contract contract) {
  spec.validate();
  std::vector<GameAtom> atoms;
  for (std::size_t k = 0; k < spec.theta_prior.support.size(); ++k) {
    const ThetaWeight& tw = spec.theta_prior.support[k];
    const JointSignalDistribution joint =
        joint_from_correlation(spec.alpha, spec.beta, tw.theta);
    const std::string theta_tag = "th" + std::to_string(k);
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int t = 0; t < 2; ++t) {
          const double p = tw.weight * joint.cell[s1][s2][t];
          if (p <= 0.0) continue;
          GameAtom atom;
          atom.prob = p;
          atom.label = to_label(t);
          atom.train1 = "*";
          atom.train2 = "*";
          switch (contract) {
            case Contract::no_sharing:
              atom.infoset1 = std::string{firm1_char(s1)};
              atom.infoset2 = std::string{firm2_char(s2)};
              break;
            case Contract::train_sharing:
              atom.infoset1 = theta_tag + '|' + firm1_char(s1);
              atom.infoset2 = theta_tag + '|' + firm2_char(s2);
              break;
            case Contract::infer_sharing:
              atom.infoset1 = pair_id(s1, s2);
              atom.infoset2 = pair_id(s1, s2);
              break;
            case Contract::full_sharing:
              atom.infoset1 = theta_tag + '|' + pair_id(s1, s2);
              atom.infoset2 = atom.infoset1;
              break;
          }
          atoms.push_back(std::move(atom));
        }
  }
  return BayesianGame(std::move(atoms), spec.utility);
}

BayesianGame build_two_hyp_infinite_game(const TwoHypothesesSpec& spec,
                                         Contract contract) {
  spec.validate();
  std::vector<GameAtom> atoms;
  const double weights[2] = {spec.pi_i, 1.0 - spec.pi_i};
  for (int h = 0; h < 2; ++h) {
    if (weights[h] <= 0.0) continue;
    const JointSignalDistribution joint = two_hypotheses_joint(
        spec, h == 0 ? Hypothesis::i : Hypothesis::ii);
    const std::string hyp_tag = h == 0 ? "H1" : "H2";
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int t = 0; t < 2; ++t) {
          const double p = weights[h] * joint.cell[s1][s2][t];
          if (p <= 0.0) continue;
          GameAtom atom;
          atom.prob = p;
          atom.label = to_label(t);
          atom.train1 = hyp_tag;
          atom.train2 = "*";
          switch (contract) {
            case Contract::no_sharing:
              atom.infoset1 = hyp_tag + '|' + firm1_char(s1);
              atom.infoset2 = std::string{firm2_char(s2)};
              break;
            case Contract::train_sharing:
              atom.infoset1 = hyp_tag + '|' + firm1_char(s1);
              atom.infoset2 = hyp_tag + '|' + firm2_char(s2);
              break;
            case Contract::infer_sharing:
              atom.infoset1 = hyp_tag + '|' + pair_id(s1, s2);
              atom.infoset2 = pair_id(s1, s2);
              break;
            case Contract::full_sharing:
              atom.infoset1 = hyp_tag + '|' + pair_id(s1, s2);
              atom.infoset2 = atom.infoset1;
              break;
          }
          atoms.push_back(std::move(atom));
        }
  }
  return BayesianGame(std::move(atoms), spec.utility);
}

BayesianGame build_one_sample_game(const TwoHypothesesSpec& spec,
                                   Contract contract) {
  spec.validate();
  std::vector<GameAtom> atoms;
  const double weights[2] = {spec.pi_i, 1.0 - spec.pi_i};
  for (int h = 0; h < 2; ++h) {
    if (weights[h] <= 0.0) continue;
    const JointSignalDistribution joint = two_hypotheses_joint(
        spec, h == 0 ? Hypothesis::i : Hypothesis::ii);
    for (int s10 = 0; s10 < 2; ++s10)
      for (int s20 = 0; s20 < 2; ++s20)
        for (int t0 = 0; t0 < 2; ++t0) {
          const double ps = joint.cell[s10][s20][t0];
          if (ps <= 0.0) continue;
          const std::string sample = sample_id(s10, s20, t0);
          const std::string w1{firm1_char(s10), char('0' + t0)};
          const std::string w2{firm2_char(s20), char('0' + t0)};
          for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2)
              for (int t = 0; t < 2; ++t) {
                const double pt = joint.cell[s1][s2][t];
                if (pt <= 0.0) continue;
                GameAtom atom;
                atom.prob = weights[h] * ps * pt;
                atom.label = to_label(t);
                atom.train1 = w1;
                atom.train2 = w2;
                switch (contract) {
                  case Contract::no_sharing:
                    atom.infoset1 = w1 + '|' + firm1_char(s1);
                    atom.infoset2 = w2 + '|' + firm2_char(s2);
                    break;
                  case Contract::train_sharing:
                    atom.infoset1 = sample + '|' + firm1_char(s1);
                    atom.infoset2 = sample + '|' + firm2_char(s2);
                    break;
                  case Contract::infer_sharing:
                    atom.infoset1 = w1 + '|' + pair_id(s1, s2);
                    atom.infoset2 = w2 + '|' + pair_id(s1, s2);
                    break;
                  case Contract::full_sharing:
                    atom.infoset1 = sample + '|' + pair_id(s1, s2);
                    atom.infoset2 = atom.infoset1;
                    break;
                }
                atoms.push_back(std::move(atom));
              }
        }
  }
  return BayesianGame(std::move(atoms), spec.utility);
}

struct ContractAnalysis {
  BayesianGame game;
  ContractOutcome outcome;
};

ContractAnalysis analyze(const ModelSpec& model, Contract ct) {
  ContractAnalysis analysis{build_game(model, ct), {}};
  analysis.outcome.equilibria = enumerate_pure_equilibria(analysis.game);
  for (const PureStrategyProfile& eq : analysis.outcome.equilibria) {
    EquilibriumValues values;
    for (int f = 0; f < 2; ++f) {
      const Firm firm = f == 0 ? Firm::one : Firm::two;
      values.exante[f] = exante_utility(analysis.game, eq, firm);
      for (const std::string& tc : analysis.game.train_components(firm)) {
        values.interim[f][tc] = interim_utility(analysis.game, eq, firm, tc);
      }
    }
    analysis.outcome.values.push_back(std::move(values));
  }
  return analysis;
}

std::vector<std::pair<std::string, std::string>> train_pairs(
    const BayesianGame& game) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const GameAtom& atom : game.atoms()) {
    pairs.emplace(atom.train1, atom.train2);
  }
  return {pairs.begin(), pairs.end()};
}

bool dominates_impl(
    const ContractAnalysis& lhs, const ContractAnalysis& rhs,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [w1, w2] : pairs) {
    double best1 = -std::numeric_limits<double>::infinity();
    double best2 = best1;
    for (const EquilibriumValues& v : rhs.outcome.values) {
      best1 = std::max(best1, v.interim[0].at(w1));
      best2 = std::max(best2, v.interim[1].at(w2));
    }
    bool found = false;
    for (const EquilibriumValues& v : lhs.outcome.values) {
      if (v.interim[0].at(w1) >= best1 - default_tolerance &&
          v.interim[1].at(w2) >= best2 - default_tolerance) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

void validate(const ModelSpec& model) {
  std::visit(
      [](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>,
                                     CorrelationModelSpec>) {
          m.validate();
        } else {
          m.spec.validate();
        }
      },
      model);
}

BayesianGame build_game(const ModelSpec& model, Contract contract) {
  return std::visit(
      [contract](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CorrelationModelSpec>) {
          return build_correlation_game(m, contract);
        } else if constexpr (std::is_same_v<T, TwoHypInfiniteModel>) {
          return build_two_hyp_infinite_game(m.spec, contract);
        } else {
          return build_one_sample_game(m.spec, contract);
        }
      },
      model);
}

BayesianGame game_from_joint(const JointSignalDistribution& joint,
                             bool firm1_sees_other, bool firm2_sees_other,
                             UtilityParams utility) {
  joint.validate();
  std::vector<GameAtom> atoms;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int t = 0; t < 2; ++t) {
        const double p = joint.cell[s1][s2][t];
        if (p <= 0.0) continue;
        GameAtom atom;
        atom.prob = p;
        atom.label = to_label(t);
        atom.train1 = "*";
        atom.train2 = "*";
        atom.infoset1 = firm1_sees_other ? pair_id(s1, s2)
                                         : std::string{firm1_char(s1)};
        atom.infoset2 = firm2_sees_other ? pair_id(s1, s2)
                                         : std::string{firm2_char(s2)};
        atoms.push_back(std::move(atom));
      }
  return BayesianGame(std::move(atoms), utility);
}

bool pareto_dominates(const ModelSpec& model, Contract ct,
                      Contract ct_prime) {
  const ContractAnalysis lhs = analyze(model, ct);
  const ContractAnalysis rhs = analyze(model, ct_prime);
  if (lhs.outcome.equilibria.empty() || rhs.outcome.equilibria.empty()) {
    throw model_error("dominance undefined: a contract has no pure equilibrium");
  }
  return dominates_impl(lhs, rhs, train_pairs(lhs.game));
}

ContractClassification classify(const ModelSpec& model) {
  ContractClassification out;
  std::vector<ContractAnalysis> analyses;
  analyses.reserve(all_contracts.size());
  for (const Contract ct : all_contracts) {
    analyses.push_back(analyze(model, ct));
  }
  bool has_eq[4];
  for (const Contract ct : all_contracts) {
    const int i = static_cast<int>(ct);
    has_eq[i] = !analyses[i].outcome.equilibria.empty();
    if (!has_eq[i]) {
      out.warnings.push_back(
          std::string(to_string(ct)) +
          ": no pure equilibrium; excluded from dominance comparisons");
    }
  }
  const auto pairs = train_pairs(analyses[0].game);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out.dominates[i][j] = has_eq[i] && has_eq[j] &&
                            dominates_impl(analyses[i], analyses[j], pairs);
    }
  }

  const int ns = static_cast<int>(Contract::no_sharing);
  const int ts = static_cast<int>(Contract::train_sharing);
  const int is = static_cast<int>(Contract::infer_sharing);
  const int fs = static_cast<int>(Contract::full_sharing);

  out.ir_set.push_back(Contract::no_sharing);
  for (const Contract ct : all_contracts) {
    const int i = static_cast<int>(ct);
    if (i != ns && out.dominates[i][ns]) out.ir_set.push_back(ct);
  }

  const auto equivalent = [&](int a, int b) {
    return out.dominates[a][b] && out.dominates[b][a];
  };
  for (const Contract ct : all_contracts) {
    const int i = static_cast<int>(ct);
    if (!has_eq[i]) continue;
    bool strictly_dominated = false;
    for (int j = 0; j < 4 && !strictly_dominated; ++j) {
      strictly_dominated =
          j != i && out.dominates[j][i] && !out.dominates[i][j];
    }
    if (strictly_dominated) continue;
    // A sharing tier equivalent to a plainer contract cedes optimality to it.
    if ((i == ts || i == is) && (equivalent(i, ns) || equivalent(i, fs))) {
      continue;
    }
    out.pareto_optimal_set.push_back(ct);
  }

  for (const Contract ct : all_contracts) {
    const bool ir = std::find(out.ir_set.begin(), out.ir_set.end(), ct) !=
                    out.ir_set.end();
    const bool po = std::find(out.pareto_optimal_set.begin(),
                              out.pareto_optimal_set.end(),
                              ct) != out.pareto_optimal_set.end();
    if (ir && po) out.irpo_set.push_back(ct);
  }
  if (out.irpo_set.size() == 1) out.uniquely_irpo = out.irpo_set.front();

  for (const Contract ct : all_contracts) {
    const int i = static_cast<int>(ct);
    out.outcomes[i] = std::move(analyses[i].outcome);
  }
  return out;
}

KnownCorrClosedForm known_corr_closed_form(double alpha, double beta,
                                           SecondaryThresholdRule rule) {
  if (!(0.5 <= beta && beta <= alpha && alpha <= 1.0)) {
    throw model_error("closed form: need 1/2 <= beta <= alpha <= 1");
  }
  const double net2 = 3.0 * beta - alpha - 1.0;
  const double bar = rule == SecondaryThresholdRule::nonnegative_net ? 0.0 : 1.0;
  KnownCorrClosedForm out;
  out.strategies.s1 = PureStrategy{{"A", Action::one}, {"B", Action::zero}};
  if (net2 >= bar) {
    out.regime = Regime::high_beta;
    out.u1 = (3.0 * alpha - beta - 1.0) / 4.0;
    out.u2 = net2 / 4.0;
    out.strategies.s2 = PureStrategy{{"a", Action::one}, {"b", Action::zero}};
  } else {
    out.regime = Regime::low_beta;
    out.u1 = (2.0 * alpha - 1.0) / 2.0;
    out.u2 = 0.0;
    out.strategies.s2 = PureStrategy{{"a", Action::zero}, {"b", Action::zero}};
  }
  return out;
}

double known_corr_full_sharing_utility(double alpha) {
  return (2.0 * alpha - 1.0) / 4.0;
}

KnownIndependentFullSharingConditions
known_independent_full_sharing_conditions(double alpha, double beta,
                                          double c1) {
  if (!(0.5 <= beta && beta <= alpha && alpha <= 1.0)) {
    throw model_error("conditions: need 1/2 <= beta <= alpha <= 1");
  }
  KnownIndependentFullSharingConditions out;

  // Full-sharing rule: act on a joint high signal, hold on a split one.
  const double fs_follow_high = alpha * beta - c1 * (1.0 - alpha) * (1.0 - beta);
  const double fs_follow_split = alpha * (1.0 - beta) - c1 * beta * (1.0 - alpha);
  out.fs_threshold_ok = fs_follow_high >= 0.0 && fs_follow_split < 0.0;

  // No-sharing equilibrium: each firm follows its own signal against a
  // signal-following opponent.
  const double f2_high =
      beta * (1.0 - alpha / 2.0) - (1.0 - beta) * c1 * (1.0 + alpha) / 2.0;
  const double f2_low =
      (1.0 - beta) * (1.0 - alpha / 2.0) - beta * c1 * (1.0 + alpha) / 2.0;
  const double f1_high =
      alpha * (1.0 - beta / 2.0) - (1.0 - alpha) * c1 * (1.0 + beta) / 2.0;
  const double f1_low =
      (1.0 - alpha) * (1.0 - beta / 2.0) - alpha * c1 * (1.0 + beta) / 2.0;
  out.ns_eq_ok = f2_high >= 0.0 && f2_low < 0.0 && f1_high >= 0.0 &&
                 f1_low < 0.0;

  const double u1_ns = alpha * beta / 2.0 + alpha * (1.0 - beta) -
                       c1 * ((1.0 - alpha) * (1.0 - beta) / 2.0 +
                             beta * (1.0 - alpha));
  const double u2_ns = alpha * beta / 2.0 + beta * (1.0 - alpha) -
                       c1 * ((1.0 - alpha) * (1.0 - beta) / 2.0 +
                             alpha * (1.0 - beta));
  const double u1_fs = 0.5 * (alpha * beta - c1 * (1.0 - alpha) * (1.0 - beta));
  out.utility_ordering_ok = u2_ns <= u1_ns && u1_ns <= u1_fs;

  CorrelationModelSpec spec;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.theta_prior.support = {{0.0, 1.0}};
  spec.utility = significant_action(1.0, c1);
  const ContractClassification classification = classify(ModelSpec{spec});
  out.fs_uniquely_irpo =
      classification.uniquely_irpo == Contract::full_sharing;
  return out;
}

}  // namespace predshare
