#include <doctest.h>

#include <cmath>

#include "predshare/distributions.hpp"

using namespace predshare;

namespace {

JointSignalDistribution uniform_joint() {
  JointSignalDistribution j;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < 2; ++t) j.cell[a][b][t] = 0.125;
  return j;
}

}  // namespace

TEST_CASE("independent joint has product cells") {
  const auto j = joint_from_correlation(0.7, 0.6, 0.0);
  CHECK(j.cell[1][1][1] == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(j.cell[1][0][1] == doctest::Approx(0.14).epsilon(1e-15));
  CHECK(j.cell[0][1][1] == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(j.cell[0][0][1] == doctest::Approx(0.06).epsilon(1e-15));
  // Label 0 mirrors label 1 with both signals flipped.
  CHECK(j.cell[0][0][0] == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(j.cell[1][1][0] == doctest::Approx(0.06).epsilon(1e-15));
  CHECK(j.mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j.label_prior(Label::one) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("signal accuracies come back out of the joint") {
  const auto j = joint_from_correlation(0.85, 0.55, 0.3);
  CHECK(j.high_signal_given_label(Firm::one, Label::one) ==
        doctest::Approx(0.85).epsilon(1e-12));
  CHECK(j.high_signal_given_label(Firm::two, Label::one) ==
        doctest::Approx(0.55).epsilon(1e-12));
  // Signals are accuracy-symmetric: the low signal is right on label 0.
  CHECK(j.high_signal_given_label(Firm::one, Label::zero) ==
        doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("theta_max matches its closed form and edge cases") {
  CHECK(theta_max(0.7, 0.6) ==
        doctest::Approx(std::sqrt(0.6 * 0.3 / (0.7 * 0.4))).epsilon(1e-15));
  CHECK(theta_max(1.0, 1.0) == 1.0);
  CHECK(theta_max(1.0, 0.6) == 0.0);
  CHECK_THROWS_AS(theta_max(0.6, 0.7), model_error);
  CHECK_THROWS_AS(theta_max(0.7, 0.4), model_error);
}

TEST_CASE("the boundary correlation empties the disagreement cell") {
  const double cap = theta_max(0.7, 0.6);
  const auto j = joint_from_correlation(0.7, 0.6, cap);
  CHECK(j.cell[0][1][1] >= 0.0);
  CHECK(j.cell[0][1][1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(j.mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("correlation beyond the cap is rejected") {
  CHECK_THROWS_AS(joint_from_correlation(0.7, 0.6, 1.0), feasibility_error);
  // A sub-rounding overshoot is clamped instead of rejected.
  const double cap = theta_max(0.7, 0.6);
  CHECK_NOTHROW(joint_from_correlation(0.7, 0.6, cap + 1e-12));
}

TEST_CASE("joint_from_correlation validates the accuracy ordering") {
  CHECK_THROWS_AS(joint_from_correlation(0.6, 0.7, 0.0), model_error);
  CHECK_THROWS_AS(joint_from_correlation(0.7, 0.3, 0.0), model_error);
  CHECK_THROWS_AS(joint_from_correlation(1.1, 0.6, 0.0), model_error);
}

TEST_CASE("correlation_of recovers theta on both labels") {
  for (double theta : {0.0, 0.2, 0.55}) {
    const auto j = joint_from_correlation(0.8, 0.65, theta);
    const auto rec = correlation_of(j);
    CHECK(rec.theta1 == doctest::Approx(theta).epsilon(1e-12));
    CHECK(rec.theta0 == doctest::Approx(theta).epsilon(1e-12));
  }
}

TEST_CASE("correlation_of rejects a degenerate signal marginal") {
  auto j = uniform_joint();
  // Firm 1 always sees the high signal on label 1.
  j.cell[1][0][1] = 0.25;
  j.cell[1][1][1] = 0.25;
  j.cell[0][0][1] = 0.0;
  j.cell[0][1][1] = 0.0;
  CHECK_THROWS_AS(correlation_of(j), model_error);
}

TEST_CASE("joint validate flags bad mass and negative cells") {
  auto j = uniform_joint();
  CHECK_NOTHROW(j.validate());
  j.cell[0][0][0] = 0.5;
  CHECK_THROWS_AS(j.validate(), feasibility_error);
  j = uniform_joint();
  j.cell[0][0][0] = -0.125;
  j.cell[1][1][1] = 0.375;
  CHECK_THROWS_AS(j.validate(), feasibility_error);
}

TEST_CASE("correlation model spec validation") {
  CorrelationModelSpec spec;
  spec.alpha = 0.7;
  spec.beta = 0.6;
  spec.utility = symmetric_significant_action(1.0);
  spec.theta_prior.support = {{0.0, 0.5}, {0.5, 0.5}};
  CHECK_NOTHROW(spec.validate());

  SUBCASE("empty prior") {
    spec.theta_prior.support.clear();
    CHECK_THROWS_AS(spec.validate(), model_error);
  }
  SUBCASE("weights must sum to one") {
    spec.theta_prior.support = {{0.0, 0.5}, {0.5, 0.4}};
    CHECK_THROWS_AS(spec.validate(), model_error);
  }
  SUBCASE("weights must be positive") {
    spec.theta_prior.support = {{0.0, 1.2}, {0.5, -0.2}};
    CHECK_THROWS_AS(spec.validate(), model_error);
  }
  SUBCASE("infeasible support point") {
    spec.theta_prior.support = {{0.0, 0.5}, {0.99, 0.5}};
    CHECK_THROWS_AS(spec.validate(), feasibility_error);
  }
}

TEST_CASE("two-hypotheses joints put the key mass where expected") {
  TwoHypothesesSpec spec;
  spec.pi_i = 0.5;
  spec.kappa = 5.0 / 32.0;
  spec.lambda = 1.0 / 8.0;
  spec.mu = 1.0 / 2.0;
  spec.validate();

  const auto one = two_hypotheses_joint(spec, Hypothesis::i);
  const auto two = two_hypotheses_joint(spec, Hypothesis::ii);
  const double rest = (1.0 - spec.kappa) * (1.0 - spec.lambda - spec.mu);

  CHECK(one.cell[1][1][1] == doctest::Approx(spec.kappa).epsilon(1e-15));
  CHECK(one.cell[1][0][0] ==
        doctest::Approx((1.0 - spec.kappa) * spec.lambda).epsilon(1e-15));
  CHECK(one.cell[0][1][0] ==
        doctest::Approx((1.0 - spec.kappa) * spec.mu).epsilon(1e-15));
  CHECK(one.cell[0][0][0] == doctest::Approx(rest).epsilon(1e-15));
  // Hypothesis II moves the positive mass to firm 1's low signal.
  CHECK(two.cell[0][1][1] == doctest::Approx(spec.kappa).epsilon(1e-15));
  CHECK(two.cell[1][1][1] == 0.0);
  CHECK(one.mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.mass() == doctest::Approx(1.0).epsilon(1e-15));

  SUBCASE("default structure keeps label-0 cells identical") {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(one.cell[a][b][0] == doctest::Approx(two.cell[a][b][0]));
  }

  SUBCASE("informative structure moves the label-0 firm-2-high mass") {
    spec.structure = TwoHypStructure::informative_negatives;
    const auto alt = two_hypotheses_joint(spec, Hypothesis::ii);
    CHECK(alt.cell[1][1][0] ==
          doctest::Approx((1.0 - spec.kappa) * spec.mu).epsilon(1e-15));
    CHECK(alt.cell[0][1][0] == 0.0);
    CHECK(alt.mass() == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("label prior is kappa under both hypotheses") {
    CHECK(one.label_prior(Label::one) ==
          doctest::Approx(spec.kappa).epsilon(1e-15));
    CHECK(two.label_prior(Label::one) ==
          doctest::Approx(spec.kappa).epsilon(1e-15));
  }
}

TEST_CASE("two-hypotheses spec validation") {
  TwoHypothesesSpec spec;
  spec.kappa = 0.1;
  spec.lambda = 0.3;
  spec.mu = 0.5;
  CHECK_NOTHROW(spec.validate());
  SUBCASE("kappa must be interior") {
    spec.kappa = 0.0;
    CHECK_THROWS_AS(spec.validate(), model_error);
    spec.kappa = 1.0;
    CHECK_THROWS_AS(spec.validate(), model_error);
  }
  SUBCASE("lambda + mu at most one") {
    spec.lambda = 0.6;
    CHECK_THROWS_AS(spec.validate(), model_error);
  }
  SUBCASE("prior probability in range") {
    spec.pi_i = 1.5;
    CHECK_THROWS_AS(spec.validate(), model_error);
  }
}

TEST_CASE("a positive sample pins down the hypothesis for firm 1") {
  TwoHypothesesSpec spec;
  spec.pi_i = 0.5;
  spec.kappa = 5.0 / 32.0;
  spec.lambda = 1.0 / 8.0;
  spec.mu = 1.0 / 2.0;

  CHECK(posterior_given_sample(spec, Firm::one, {true, Label::one})
            .prob_hyp_i == doctest::Approx(1.0));
  CHECK(posterior_given_sample(spec, Firm::one, {false, Label::one})
            .prob_hyp_i == doctest::Approx(0.0));
}

TEST_CASE("label-0 samples move firm 1 only under informative negatives") {
  TwoHypothesesSpec spec;
  spec.pi_i = 0.5;
  spec.kappa = 5.0 / 32.0;
  spec.lambda = 1.0 / 8.0;
  spec.mu = 1.0 / 2.0;

  CHECK(posterior_given_sample(spec, Firm::one, {true, Label::zero})
            .prob_hyp_i == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(posterior_given_sample(spec, Firm::one, {false, Label::zero})
            .prob_hyp_i == doctest::Approx(0.5).epsilon(1e-15));

  spec.structure = TwoHypStructure::informative_negatives;
  CHECK(posterior_given_sample(spec, Firm::one, {true, Label::zero})
            .prob_hyp_i == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(posterior_given_sample(spec, Firm::one, {false, Label::zero})
            .prob_hyp_i == doctest::Approx(7.0 / 10.0).epsilon(1e-15));
}

TEST_CASE("firm 2 samples never move the posterior") {
  TwoHypothesesSpec spec;
  spec.pi_i = 0.7;
  spec.kappa = 0.055;
  spec.lambda = 0.0155;
  spec.mu = 0.29;
  const FirmSample feasible[] = {
      {true, Label::one}, {true, Label::zero}, {false, Label::zero}};
  for (auto structure : {TwoHypStructure::uninformative_negatives,
                         TwoHypStructure::informative_negatives}) {
    spec.structure = structure;
    for (const FirmSample& sample : feasible) {
      CHECK(posterior_given_sample(spec, Firm::two, sample).prob_hyp_i ==
            doctest::Approx(0.7).epsilon(1e-12));
    }
    // All label-1 mass sits on firm 2's high signal, so (low, 1) is
    // impossible.
    CHECK_THROWS_AS(
        posterior_given_sample(spec, Firm::two, {false, Label::one}),
        model_error);
  }
}

TEST_CASE("a zero-probability sample is rejected") {
  TwoHypothesesSpec spec;
  spec.pi_i = 1.0;  // hypothesis II impossible
  spec.kappa = 0.25;
  spec.lambda = 0.0;  // (A, 0) has zero mass under hypothesis I
  spec.mu = 0.5;
  CHECK_THROWS_AS(
      posterior_given_sample(spec, Firm::one, {true, Label::zero}),
      model_error);
}
