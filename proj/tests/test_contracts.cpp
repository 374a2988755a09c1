#include <doctest.h>

#include <algorithm>
#include <vector>

#include "predshare/contracts.hpp"

using namespace predshare;

namespace {

CorrelationModelSpec corr_spec(double alpha, double beta,
                               std::vector<ThetaWeight> prior,
                               UtilityParams utility) {
  CorrelationModelSpec spec;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.theta_prior.support = std::move(prior);
  spec.utility = utility;
  return spec;
}

TwoHypothesesSpec figure_one_sample_spec() {
  TwoHypothesesSpec spec;
  spec.pi_i = 0.5;
  spec.kappa = 5.0 / 32.0;
  spec.lambda = 1.0 / 8.0;
  spec.mu = 0.5;
  spec.utility = matching_recommendations();
  return spec;
}

bool in_set(const std::vector<Contract>& set, Contract ct) {
  return std::find(set.begin(), set.end(), ct) != set.end();
}

}  // namespace

TEST_CASE("contract infoset counts, known correlation with a 2-point prior") {
  const double cap = theta_max(0.7, 0.6);
  const auto spec = corr_spec(0.7, 0.6, {{0.0, 0.5}, {cap, 0.5}},
                              symmetric_significant_action(1.0));
  const struct {
    Contract ct;
    std::size_t n1;
    std::size_t n2;
  } expected[] = {
      {Contract::no_sharing, 2, 2},
      {Contract::train_sharing, 4, 4},
      {Contract::infer_sharing, 4, 4},
      {Contract::full_sharing, 8, 8},
  };
  for (const auto& row : expected) {
    const auto game = build_game(ModelSpec{spec}, row.ct);
    CHECK(game.infosets(Firm::one).size() == row.n1);
    CHECK(game.infosets(Firm::two).size() == row.n2);
  }
}

TEST_CASE("contract infoset counts, two-hypotheses models") {
  TwoHypothesesSpec spec;
  spec.pi_i = 0.7;
  spec.kappa = 0.055;
  spec.lambda = 0.0155;
  spec.mu = 0.29;
  spec.utility = matching_recommendations();

  SUBCASE("unbounded training data") {
    const ModelSpec model{TwoHypInfiniteModel{spec}};
    CHECK(build_game(model, Contract::no_sharing).infosets(Firm::one).size() ==
          4);
    CHECK(build_game(model, Contract::no_sharing).infosets(Firm::two).size() ==
          2);
    CHECK(build_game(model, Contract::infer_sharing)
              .infosets(Firm::one)
              .size() == 7);
    CHECK(build_game(model, Contract::infer_sharing)
              .infosets(Firm::two)
              .size() == 4);
    CHECK(build_game(model, Contract::full_sharing)
              .infosets(Firm::one)
              .size() == 7);
    CHECK(build_game(model, Contract::full_sharing)
              .infosets(Firm::two)
              .size() == 7);
  }

  SUBCASE("one shared sample, default structure") {
    const ModelSpec model{TwoHypOneSampleModel{figure_one_sample_spec()}};
    const struct {
      Contract ct;
      std::size_t n1;
      std::size_t n2;
    } expected[] = {
        {Contract::no_sharing, 8, 6},
        {Contract::train_sharing, 10, 10},
        {Contract::infer_sharing, 15, 12},
        {Contract::full_sharing, 19, 19},
    };
    for (const auto& row : expected) {
      const auto game = build_game(model, row.ct);
      CHECK(game.infosets(Firm::one).size() == row.n1);
      CHECK(game.infosets(Firm::two).size() == row.n2);
    }
  }

  SUBCASE("one shared sample, informative negatives") {
    auto alt = figure_one_sample_spec();
    alt.structure = TwoHypStructure::informative_negatives;
    const ModelSpec model{TwoHypOneSampleModel{alt}};
    CHECK(build_game(model, Contract::full_sharing)
              .infosets(Firm::one)
              .size() == 24);
    CHECK(build_game(model, Contract::full_sharing)
              .infosets(Firm::two)
              .size() == 24);
  }
}

TEST_CASE("no-sharing is uniquely IRPO under symmetric costs") {
  const auto spec = corr_spec(0.7, 0.6, {{0.0, 1.0}},
                              symmetric_significant_action(1.0));
  const auto result = classify(ModelSpec{spec});
  REQUIRE(result.uniquely_irpo.has_value());
  CHECK(*result.uniquely_irpo == Contract::no_sharing);
  CHECK(result.warnings.empty());

  const auto ns = static_cast<std::size_t>(Contract::no_sharing);
  REQUIRE(result.outcomes[ns].values.size() == 1);
  CHECK(result.outcomes[ns].values.front().exante[0] ==
        doctest::Approx(0.125).epsilon(1e-12));
  CHECK(result.outcomes[ns].values.front().exante[1] ==
        doctest::Approx(0.025).epsilon(1e-12));
  // Single equilibrium per side, so self-domination holds.
  CHECK(result.dominates[ns][ns]);
}

TEST_CASE("full-sharing dominates infer-sharing on an asymmetric stake") {
  const auto spec =
      corr_spec(0.8, 0.6, {{0.0, 1.0}}, significant_action(1.0, 0.5));
  CHECK(pareto_dominates(ModelSpec{spec}, Contract::full_sharing,
                         Contract::infer_sharing));
}

TEST_CASE("equal accuracies leave no-sharing and full-sharing tied") {
  const auto spec = corr_spec(0.75, 0.75, {{0.0, 1.0}},
                              symmetric_significant_action(1.0));
  const auto result = classify(ModelSpec{spec});
  CHECK(in_set(result.irpo_set, Contract::no_sharing));
  CHECK(in_set(result.irpo_set, Contract::full_sharing));
  CHECK_FALSE(result.uniquely_irpo.has_value());
  CHECK(pareto_dominates(ModelSpec{spec}, Contract::no_sharing,
                         Contract::full_sharing));
  CHECK(pareto_dominates(ModelSpec{spec}, Contract::full_sharing,
                         Contract::no_sharing));
}

TEST_CASE("infinite-model witness classification") {
  TwoHypothesesSpec spec;
  spec.pi_i = 0.7;
  spec.kappa = 0.055;
  spec.lambda = 0.0155;
  spec.mu = 0.29;
  spec.utility = matching_recommendations();
  const auto result = classify(ModelSpec{TwoHypInfiniteModel{spec}});

  CHECK(result.irpo_set == std::vector<Contract>{Contract::no_sharing});
  const auto ns = static_cast<std::size_t>(Contract::no_sharing);
  const auto fs = static_cast<std::size_t>(Contract::full_sharing);
  REQUIRE(!result.outcomes[ns].values.empty());
  CHECK(result.outcomes[ns].values.front().exante[0] ==
        doctest::Approx(0.505873375).epsilon(1e-12));
  CHECK(result.outcomes[ns].values.front().exante[1] ==
        doctest::Approx(0.477626625).epsilon(1e-12));
  REQUIRE(!result.outcomes[fs].values.empty());
  CHECK(result.outcomes[fs].values.front().exante[0] ==
        doctest::Approx(0.49175).epsilon(1e-12));
  // Firm 1's interim utilities split by hypothesis under no-sharing.
  const auto& interim = result.outcomes[ns].values.front().interim[0];
  REQUIRE(interim.count("H1") == 1);
  REQUIRE(interim.count("H2") == 1);
  CHECK(interim.at("H1") == doctest::Approx(0.52017625).epsilon(1e-12));
  CHECK(interim.at("H2") == doctest::Approx(0.4725).epsilon(1e-12));
}

TEST_CASE("one-sample witness classification, both structures") {
  const ModelSpec model{TwoHypOneSampleModel{figure_one_sample_spec()}};
  const auto result = classify(model);
  CHECK(in_set(result.irpo_set, Contract::no_sharing));
  const auto ns = static_cast<std::size_t>(Contract::no_sharing);
  const auto fs = static_cast<std::size_t>(Contract::full_sharing);
  REQUIRE(!result.outcomes[ns].values.empty());
  CHECK(result.outcomes[ns].values.front().exante[0] ==
        doctest::Approx(14791.0 / 32768.0).epsilon(1e-12));
  CHECK(result.outcomes[ns].values.front().exante[1] ==
        doctest::Approx(15417.0 / 32768.0).epsilon(1e-12));
  REQUIRE(!result.outcomes[fs].values.empty());
  CHECK(result.outcomes[fs].values.front().exante[1] ==
        doctest::Approx(59.0 / 128.0).epsilon(1e-12));

  auto alt_spec = figure_one_sample_spec();
  alt_spec.structure = TwoHypStructure::informative_negatives;
  const auto alt = classify(ModelSpec{TwoHypOneSampleModel{alt_spec}});
  CHECK(alt.irpo_set == std::vector<Contract>{Contract::train_sharing});
  REQUIRE(!alt.outcomes[fs].values.empty());
  CHECK(alt.outcomes[fs].values.front().exante[1] ==
        doctest::Approx(1913.0 / 4096.0).epsilon(1e-12));
}

TEST_CASE("closed-form no-sharing equilibrium by regime") {
  SUBCASE("secondary firm active") {
    const auto form = known_corr_closed_form(0.7, 0.6);
    CHECK(form.regime == Regime::high_beta);
    CHECK(form.u1 == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(form.u2 == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(form.strategies.s1.at("A") == Action::one);
    CHECK(form.strategies.s1.at("B") == Action::zero);
    CHECK(form.strategies.s2.at("a") == Action::one);
    CHECK(form.strategies.s2.at("b") == Action::zero);
  }
  SUBCASE("secondary firm priced out") {
    const auto form = known_corr_closed_form(0.9, 0.55);
    CHECK(form.regime == Regime::low_beta);
    CHECK(form.u1 == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(form.u2 == 0.0);
    CHECK(form.strategies.s1.at("A") == Action::one);
    CHECK(form.strategies.s2.at("a") == Action::zero);
    CHECK(form.strategies.s2.at("b") == Action::zero);
  }
  SUBCASE("the alternate threshold reading flips the witness regime") {
    const auto form =
        known_corr_closed_form(0.7, 0.6, SecondaryThresholdRule::unit_margin);
    CHECK(form.regime == Regime::low_beta);
    CHECK(form.u1 == doctest::Approx(0.2).epsilon(1e-15));
  }
}

TEST_CASE("closed-form full-sharing utility") {
  CHECK(known_corr_full_sharing_utility(0.7) ==
        doctest::Approx(0.1).epsilon(1e-15));
  CHECK(known_corr_full_sharing_utility(0.5) == doctest::Approx(0.0));
}

TEST_CASE("independent-signals full-sharing condition groups") {
  const auto ok = known_independent_full_sharing_conditions(0.9, 0.85, 2.5);
  CHECK(ok.fs_threshold_ok);
  CHECK(ok.ns_eq_ok);
  CHECK(ok.utility_ordering_ok);
  CHECK(ok.fs_uniquely_irpo);

  // The groups imply unique IRPO wherever they hold.
  const double points[][3] = {
      {0.9, 0.85, 2.5}, {0.75, 0.75, 0.1}, {0.95, 0.6, 1.2}};
  for (const auto& p : points) {
    const auto cond =
        known_independent_full_sharing_conditions(p[0], p[1], p[2]);
    if (cond.fs_threshold_ok && cond.ns_eq_ok && cond.utility_ordering_ok) {
      CHECK(cond.fs_uniquely_irpo);
    }
  }

  const auto tied = known_independent_full_sharing_conditions(0.75, 0.75, 0.1);
  CHECK_FALSE(tied.fs_uniquely_irpo);
}

TEST_CASE("game_from_joint visibility flags set the infoset space") {
  const auto joint = joint_from_correlation(0.8, 0.65, 0.2);
  const auto utility = significant_action(1.0, 1.0);
  const auto blind = game_from_joint(joint, false, false, utility);
  CHECK(blind.infosets(Firm::one).size() == 2);
  CHECK(blind.infosets(Firm::two).size() == 2);
  const auto open = game_from_joint(joint, true, true, utility);
  CHECK(open.infosets(Firm::one).size() == 4);
  CHECK(open.infosets(Firm::two).size() == 4);
  const auto one_way = game_from_joint(joint, false, true, utility);
  CHECK(one_way.infosets(Firm::one).size() == 2);
  CHECK(one_way.infosets(Firm::two).size() == 4);
}

TEST_CASE("model validation dispatches through the variant") {
  auto bad = corr_spec(0.6, 0.7, {{0.0, 1.0}}, symmetric_significant_action(1.0));
  CHECK_THROWS_AS(validate(ModelSpec{bad}), model_error);
  TwoHypothesesSpec hyp;
  hyp.kappa = 0.0;
  CHECK_THROWS_AS(validate(ModelSpec{TwoHypInfiniteModel{hyp}}), model_error);
}
