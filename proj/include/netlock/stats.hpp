#pragma once

#include "netlock/types.hpp"

namespace netlock {

/// Regularized incomplete beta function I_x(a, b) via the standard continued
/// fraction (modified Lentz). Accurate to ~1e-14 for moderate a, b.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided p-value of the t statistic with `dof` degrees of freedom,
/// p = I_{dof/(dof+t^2)}(dof/2, 1/2).
double student_t_two_sided_p(double t, double dof);

struct Correlation {
  double r;
  double p_value;
  double t_statistic;
};

/// Pearson correlation with the t-test of H0: rho = 0 (two-sided).
/// Throws NumericalError if either vector has zero variance or n < 3.
Correlation pearson_correlation(const Vector& x, const Vector& y);

}  // namespace netlock
