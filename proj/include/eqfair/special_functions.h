#pragma once

namespace eqfair {

// Probability value guaranteed to lie in [0, 1] and never NaN.
class Probability {
 public:
  explicit Probability(double value);
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 coefficients).
double LogGamma(double x);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
// Series expansion below x = a + 1, modified Lentz continued fraction above.
double RegularizedGammaP(double a, double x);
double RegularizedGammaQ(double a, double x);

// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
// Saturates at 1e-300 instead of underflowing to 0.
Probability ChiSquaredSurvival(double x, int dof);

// Two-tailed standard normal p-value erfc(|z| / sqrt(2)).
Probability NormalTwoTailedP(double z);

// Inverse of NormalTwoTailedP on z >= 0, by bisection. Accepts alpha in
// (0, 1]; alpha = 1 is the full mass and maps to z = 0.
double NormalTwoTailedQuantile(double alpha);

}  // namespace eqfair
