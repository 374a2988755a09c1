#include "predshare/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace predshare {

namespace {

// Lower-incomplete series: P(a, x) = x^a e^-x / Gamma(a+1) * sum x^n / (a+1)...(a+n).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper-incomplete continued fraction (Lentz), valid for x > a + 1.
double gamma_q_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(a) || !std::isfinite(x)) {
    throw std::domain_error("gamma_q: need a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_tail(double stat, int dof) {
  if (dof <= 0) throw std::domain_error("chi_square_tail: dof must be positive");
  if (stat <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

}  // namespace predshare
