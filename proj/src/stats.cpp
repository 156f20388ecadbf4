#include "netlock/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netlock {
namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete beta: continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("incomplete beta: a, b must be positive");
  if (x < 0.0 || x > 1.0) throw ConfigError("incomplete beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // Use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) to stay in the fast-converging regime.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  if (!(dof > 0.0)) throw ConfigError("t-test: degrees of freedom must be positive");
  if (!std::isfinite(t)) return 0.0;
  const double x = dof / (dof + t * t);
  return regularized_incomplete_beta(0.5 * dof, 0.5, x);
}

Correlation pearson_correlation(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw ConfigError("pearson: size mismatch");
  const Index n = x.size();
  if (n < 3) throw ConfigError("pearson: needs at least 3 observations");

  const Vector cx = x.array() - x.mean();
  const Vector cy = y.array() - y.mean();
  const double sxx = cx.squaredNorm();
  const double syy = cy.squaredNorm();
  if (sxx <= 0.0 || syy <= 0.0)
    throw NumericalError("pearson: zero variance input");

  double r = cx.dot(cy) / std::sqrt(sxx * syy);
  r = std::clamp(r, -1.0, 1.0);

  const double dof = static_cast<double>(n - 2);
  double t;
  if (std::fabs(r) == 1.0) {
    t = std::numeric_limits<double>::infinity();
  } else {
    t = r * std::sqrt(dof / (1.0 - r * r));
  }
  return {r, student_t_two_sided_p(t, dof), t};
}

}  // namespace netlock
