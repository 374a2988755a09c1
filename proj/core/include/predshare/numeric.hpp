#pragma once

namespace predshare {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

// P[Chi2(dof) >= stat], the right tail of the chi-square distribution.
double chi_square_tail(double stat, int dof);

}  // namespace predshare
