#pragma once

#include <cstdint>
#include <vector>

#include "predshare/core.hpp"

namespace predshare {

// Joint distribution over (firm-1 signal, firm-2 signal, label), 8 cells.
// cell[X][x][t]: X = 1 means firm 1 saw its high signal A, x = 1 means firm 2
// saw a, t is the label. Cells are nonnegative and sum to one.
struct JointSignalDistribution {
  double cell[2][2][2] = {};

  double mass() const;
  double label_prior(Label t) const;
  // Pr[high signal | label t] for the given firm.
  double high_signal_given_label(Firm firm, Label t) const;
  // Throws feasibility_error on a negative cell or a mass away from one.
  void validate() const;
};

// Largest correlation for which the joint stays a distribution,
// sqrt(beta(1-alpha) / (alpha(1-beta))). Defined as 1 when alpha = beta = 1.
double theta_max(double alpha, double beta);

// Joint with Pr[1] = 1/2, per-label signal accuracies alpha >= beta and
// per-label signal correlation theta on both labels.
JointSignalDistribution joint_from_correlation(double alpha, double beta,
                                               double theta);

struct LabelCorrelations {
  double theta0 = 0.0;
  double theta1 = 0.0;
};

// Per-label Pearson correlation of the two firms' high-signal indicators.
// Throws model_error when a conditional signal marginal is degenerate.
LabelCorrelations correlation_of(const JointSignalDistribution& joint);

struct ThetaWeight {
  double theta = 0.0;
  double weight = 0.0;
};

// Finite-support prior over the correlation parameter.
struct ThetaPrior {
  std::vector<ThetaWeight> support;
};

struct CorrelationModelSpec {
  double alpha = 0.0;
  double beta = 0.0;
  ThetaPrior theta_prior;
  UtilityParams utility;

  // Checks 1/2 <= beta <= alpha <= 1, positive weights summing to one, and
  // feasibility of every support point. Throws model_error/feasibility_error.
  void validate() const;
};

enum class Hypothesis : std::uint8_t { i, ii };

// How hypothesis II redistributes label-0 mass relative to hypothesis I.
// uninformative_negatives keeps the label-0 cells identical, so a label-0
// training sample never moves firm 1's posterior. informative_negatives moves
// the label-0 firm-2-high mass under firm 1's high signal instead, making
// label-0 samples informative.
enum class TwoHypStructure : std::uint8_t {
  uninformative_negatives,
  informative_negatives,
};

struct TwoHypothesesSpec {
  double pi_i = 0.5;
  double kappa = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  UtilityParams utility = matching_recommendations();
  TwoHypStructure structure = TwoHypStructure::uninformative_negatives;

  void validate() const;
};

// The per-hypothesis joint. Hypothesis I concentrates the label-1 mass kappa
// on (A, a, 1); hypothesis II moves it to (B, a, 1).
JointSignalDistribution two_hypotheses_joint(const TwoHypothesesSpec& spec,
                                             Hypothesis hyp);

struct HypPosterior {
  double prob_hyp_i = 0.0;
};

// One training observation of a single firm: its own signal plus the label.
struct FirmSample {
  bool high_signal = false;  // firm 1: X = A; firm 2: x = a
  Label label = Label::zero;
};

// Bayes update of pi_i from one (signal, label) draw of the given firm.
// Firm 2's sample marginals coincide across hypotheses, so its posterior
// always equals the prior. Throws model_error on a zero-probability sample.
HypPosterior posterior_given_sample(const TwoHypothesesSpec& spec, Firm firm,
                                    FirmSample sample);

}  // namespace predshare
