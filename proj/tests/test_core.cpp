#include <doctest.h>

#include "predshare/core.hpp"

using namespace predshare;

TEST_CASE("expost utility pays the reward for a correct action") {
  const UtilityParams u{2.0, 3.0, 0.5, 0.7};
  CHECK(expost_utility(u, Action::one, Label::one, Action::zero) == 3.0);
  CHECK(expost_utility(u, Action::zero, Label::zero, Action::one) == 2.0);
}

TEST_CASE("expost utility charges the cost of the action taken") {
  const UtilityParams u{2.0, 3.0, 0.5, 0.7};
  CHECK(expost_utility(u, Action::one, Label::zero, Action::zero) == -0.7);
  CHECK(expost_utility(u, Action::zero, Label::one, Action::one) == -0.5);
}

TEST_CASE("identical actions halve the payoff, gains and losses alike") {
  const UtilityParams u{2.0, 3.0, 0.5, 0.7};
  CHECK(expost_utility(u, Action::one, Label::one, Action::one) == 1.5);
  CHECK(expost_utility(u, Action::one, Label::zero, Action::one) ==
        doctest::Approx(-0.35));
  CHECK(expost_utility(u, Action::zero, Label::zero, Action::zero) == 1.0);
  CHECK(expost_utility(u, Action::zero, Label::one, Action::zero) ==
        doctest::Approx(-0.25));
}

TEST_CASE("significant action leaves action zero worthless") {
  const UtilityParams u = significant_action(1.0, 0.25);
  CHECK(u.reward0 == 0.0);
  CHECK(u.cost0 == 0.0);
  CHECK(u.reward1 == 1.0);
  CHECK(u.cost1 == 0.25);
  CHECK(expost_utility(u, Action::zero, Label::zero, Action::one) == 0.0);
  CHECK(expost_utility(u, Action::zero, Label::one, Action::one) == 0.0);
}

TEST_CASE("significant action validates its parameters") {
  CHECK_THROWS_AS(significant_action(0.0, 1.0), model_error);
  CHECK_THROWS_AS(significant_action(-1.0, 1.0), model_error);
  CHECK_THROWS_AS(significant_action(1.0, -0.1), model_error);
  CHECK_NOTHROW(significant_action(1.0, 0.0));
}

TEST_CASE("symmetric significant action sets cost equal to reward") {
  const UtilityParams u = symmetric_significant_action(1.5);
  CHECK(u.reward1 == 1.5);
  CHECK(u.cost1 == 1.5);
  CHECK(u.reward0 == 0.0);
}

TEST_CASE("matching recommendations rewards both correct actions") {
  const UtilityParams u = matching_recommendations();
  CHECK(u.reward0 == 1.0);
  CHECK(u.reward1 == 1.0);
  CHECK(u.cost0 == 0.0);
  CHECK(u.cost1 == 0.0);
  CHECK(expost_utility(u, Action::one, Label::zero, Action::zero) == 0.0);
}

TEST_CASE("contract names round trip") {
  for (Contract ct : all_contracts) {
    const auto parsed = contract_from_string(to_string(ct));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == ct);
  }
  CHECK(to_string(Contract::no_sharing) == "no-sharing");
  CHECK(to_string(Contract::full_sharing) == "full-sharing");
  CHECK_FALSE(contract_from_string("secret-sharing").has_value());
}

TEST_CASE("contract short aliases parse") {
  CHECK(contract_from_string("ns") == Contract::no_sharing);
  CHECK(contract_from_string("ts") == Contract::train_sharing);
  CHECK(contract_from_string("is") == Contract::infer_sharing);
  CHECK(contract_from_string("fs") == Contract::full_sharing);
}

TEST_CASE("other_firm flips") {
  CHECK(other_firm(Firm::one) == Firm::two);
  CHECK(other_firm(Firm::two) == Firm::one);
}
