#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "predshare/numeric.hpp"

using namespace predshare;

TEST_CASE("gamma_q matches the exponential identity at a = 1") {
  for (double x : {0.0, 0.3, 1.0, 4.5, 20.0}) {
    CHECK(gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma_q matches erfc at a = 1/2") {
  for (double x : {0.1, 0.5, 2.5, 9.0}) {
    CHECK(gamma_q(0.5, x) ==
          doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-12));
  }
}

TEST_CASE("chi-square tail agrees with reference values") {
  CHECK(chi_square_tail(19.0, 19) ==
        doctest::Approx(0.45683612559196224).epsilon(1e-10));
  CHECK(chi_square_tail(30.1435, 19) ==
        doctest::Approx(0.05000033560482573).epsilon(1e-10));
  CHECK(chi_square_tail(3.84, 1) ==
        doctest::Approx(0.05004352124870519).epsilon(1e-10));
  CHECK(chi_square_tail(123.4, 100) ==
        doctest::Approx(0.05625009243581586).epsilon(1e-10));
}

TEST_CASE("chi-square tail boundary behavior") {
  CHECK(chi_square_tail(0.0, 5) == 1.0);
  CHECK(chi_square_tail(1e4, 2) < 1e-300);
}

TEST_CASE("chi-square tail is decreasing in the statistic") {
  double prev = 1.0;
  for (double s = 0.5; s < 40.0; s += 0.5) {
    const double tail = chi_square_tail(s, 7);
    CHECK(tail <= prev);
    prev = tail;
  }
}
