#include "predshare/distributions.hpp"

#include <cmath>
#include <string>

namespace predshare {

namespace {

constexpr double feasibility_floor = -1e-9;

double clamp_cell(double v, const char* what) {
  if (v < feasibility_floor) {
    throw feasibility_error(std::string(what) + " yields negative cell " +
                            std::to_string(v));
  }
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

double JointSignalDistribution::mass() const {
  double total = 0.0;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int t = 0; t < 2; ++t) total += cell[s1][s2][t];
  return total;
}

double JointSignalDistribution::label_prior(Label t) const {
  const int ti = static_cast<int>(t);
  return cell[0][0][ti] + cell[0][1][ti] + cell[1][0][ti] + cell[1][1][ti];
}

double JointSignalDistribution::high_signal_given_label(Firm firm,
                                                        Label t) const {
  const int ti = static_cast<int>(t);
  const double pt = label_prior(t);
  if (pt <= 0.0) {
    throw model_error("signal marginal undefined: label has zero mass");
  }
  double high = 0.0;
  for (int other = 0; other < 2; ++other) {
    high += firm == Firm::one ? cell[1][other][ti] : cell[other][1][ti];
  }
  return high / pt;
}

void JointSignalDistribution::validate() const {
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int t = 0; t < 2; ++t) {
        if (cell[s1][s2][t] < 0.0) {
          throw feasibility_error("joint has a negative cell");
        }
      }
  if (std::fabs(mass() - 1.0) > mass_tolerance) {
    throw feasibility_error("joint mass is not 1");
  }
}

double theta_max(double alpha, double beta) {
  if (!(0.5 <= beta && beta <= alpha && alpha <= 1.0)) {
    throw model_error("theta_max: need 1/2 <= beta <= alpha <= 1");
  }
  if (alpha == 1.0 && beta == 1.0) return 1.0;
  return std::sqrt(beta * (1.0 - alpha) / (alpha * (1.0 - beta)));
}

JointSignalDistribution joint_from_correlation(double alpha, double beta,
                                               double theta) {
  if (!(0.5 <= beta && beta <= alpha && alpha <= 1.0)) {
    throw model_error("joint_from_correlation: need 1/2 <= beta <= alpha <= 1");
  }
  const double rho =
      std::sqrt(alpha * beta) *
      (std::sqrt(alpha * beta) +
       theta * std::sqrt((1.0 - alpha) * (1.0 - beta)));
  const double both_high = clamp_cell(rho, "correlation");
  const double only1 = clamp_cell(alpha - rho, "correlation");
  const double only2 = clamp_cell(beta - rho, "correlation");
  const double neither = clamp_cell(1.0 - alpha - beta + rho, "correlation");

  JointSignalDistribution joint;
  // Label 1: the high signals A/a are the correct ones.
  joint.cell[1][1][1] = 0.5 * both_high;
  joint.cell[1][0][1] = 0.5 * only1;
  joint.cell[0][1][1] = 0.5 * only2;
  joint.cell[0][0][1] = 0.5 * neither;
  // Label 0 mirrors with B/b correct.
  joint.cell[0][0][0] = 0.5 * both_high;
  joint.cell[0][1][0] = 0.5 * only1;
  joint.cell[1][0][0] = 0.5 * only2;
  joint.cell[1][1][0] = 0.5 * neither;
  joint.validate();
  return joint;
}

LabelCorrelations correlation_of(const JointSignalDistribution& joint) {
  joint.validate();
  LabelCorrelations out;
  for (int t = 0; t < 2; ++t) {
    const Label label = t == 0 ? Label::zero : Label::one;
    const double pt = joint.label_prior(label);
    if (pt <= 0.0) {
      throw model_error("correlation undefined: label has zero mass");
    }
    const double m1 = joint.high_signal_given_label(Firm::one, label);
    const double m2 = joint.high_signal_given_label(Firm::two, label);
    if (m1 <= 0.0 || m1 >= 1.0 || m2 <= 0.0 || m2 >= 1.0) {
      throw model_error("correlation undefined: degenerate signal marginal");
    }
    const double joint_high = joint.cell[1][1][t] / pt;
    const double value = (joint_high - m1 * m2) /
                         std::sqrt(m1 * (1.0 - m1) * m2 * (1.0 - m2));
    (t == 0 ? out.theta0 : out.theta1) = value;
  }
  return out;
}

void CorrelationModelSpec::validate() const {
  if (!(0.5 <= beta && beta <= alpha && alpha <= 1.0)) {
    throw model_error("correlation model: need 1/2 <= beta <= alpha <= 1");
  }
  if (theta_prior.support.empty()) {
    throw model_error("correlation model: empty theta prior");
  }
  double total = 0.0;
  for (const ThetaWeight& tw : theta_prior.support) {
    if (!(tw.weight > 0.0)) {
      throw model_error("correlation model: prior weights must be positive");
    }
    total += tw.weight;
    joint_from_correlation(alpha, beta, tw.theta);  // feasibility check
  }
  if (std::fabs(total - 1.0) > mass_tolerance) {
    throw model_error("correlation model: prior weights must sum to 1");
  }
}

void TwoHypothesesSpec::validate() const {
  if (!(0.0 <= pi_i && pi_i <= 1.0)) {
    throw model_error("two-hypotheses model: pi_i outside [0,1]");
  }
  if (!(0.0 < kappa && kappa < 1.0)) {
    throw model_error("two-hypotheses model: kappa outside (0,1)");
  }
  if (!(0.0 <= lambda && lambda <= 1.0 && 0.0 <= mu && mu <= 1.0)) {
    throw model_error("two-hypotheses model: lambda or mu outside [0,1]");
  }
  if (lambda + mu > 1.0) {
    throw model_error("two-hypotheses model: lambda + mu exceeds 1");
  }
}

JointSignalDistribution two_hypotheses_joint(const TwoHypothesesSpec& spec,
                                             Hypothesis hyp) {
  spec.validate();
  JointSignalDistribution joint;
  const double rest = (1.0 - spec.kappa) * (1.0 - spec.lambda - spec.mu);
  if (hyp == Hypothesis::i) {
    joint.cell[1][1][1] = spec.kappa;
    joint.cell[1][0][0] = (1.0 - spec.kappa) * spec.lambda;
    joint.cell[0][1][0] = (1.0 - spec.kappa) * spec.mu;
    joint.cell[0][0][0] = rest;
  } else {
    joint.cell[0][1][1] = spec.kappa;
    joint.cell[1][0][0] = (1.0 - spec.kappa) * spec.lambda;
    if (spec.structure == TwoHypStructure::uninformative_negatives) {
      joint.cell[0][1][0] = (1.0 - spec.kappa) * spec.mu;
    } else {
      joint.cell[1][1][0] = (1.0 - spec.kappa) * spec.mu;
    }
    joint.cell[0][0][0] = rest;
  }
  joint.validate();
  return joint;
}

HypPosterior posterior_given_sample(const TwoHypothesesSpec& spec, Firm firm,
                                    FirmSample sample) {
  const JointSignalDistribution joint_i =
      two_hypotheses_joint(spec, Hypothesis::i);
  const JointSignalDistribution joint_ii =
      two_hypotheses_joint(spec, Hypothesis::ii);
  const int s = sample.high_signal ? 1 : 0;
  const int t = static_cast<int>(sample.label);
  auto marginal = [&](const JointSignalDistribution& joint) {
    return firm == Firm::one ? joint.cell[s][0][t] + joint.cell[s][1][t]
                             : joint.cell[0][s][t] + joint.cell[1][s][t];
  };
  const double like_i = marginal(joint_i);
  const double like_ii = marginal(joint_ii);
  const double evidence = spec.pi_i * like_i + (1.0 - spec.pi_i) * like_ii;
  if (evidence <= 0.0) {
    throw model_error("posterior undefined: zero-probability sample");
  }
  return HypPosterior{spec.pi_i * like_i / evidence};
}

}  // namespace predshare
