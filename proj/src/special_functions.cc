#include "eqfair/special_functions.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "eqfair/error.h"

namespace eqfair {
namespace {

constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// P(a, x) by its power series; converges quickly for x < a + 1.
double GammaSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - LogGamma(a));
}

// Q(a, x) by its continued fraction, evaluated with the modified Lentz method.
double GammaContinuedFraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - LogGamma(a)) * h;
}

void CheckGammaArgs(double a, double x) {
  if (!(a > 0.0)) throw InvalidInput(fmt::format("incomplete gamma shape must be > 0, got {}", a));
  if (!(x >= 0.0)) throw InvalidInput(fmt::format("incomplete gamma argument must be >= 0, got {}", x));
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidInput(fmt::format("probability out of [0, 1]: {}", value));
  }
}

double LogGamma(double x) {
  if (!(x > 0.0)) throw InvalidInput(fmt::format("LogGamma requires x > 0, got {}", x));
  if (x < 0.5) {
    // Reflection keeps the approximation in its accurate range.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - LogGamma(1.0 - x);
  }
  x -= 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(sum);
}

double RegularizedGammaP(double a, double x) {
  CheckGammaArgs(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return GammaSeries(a, x);
  return 1.0 - GammaContinuedFraction(a, x);
}

double RegularizedGammaQ(double a, double x) {
  CheckGammaArgs(a, x);
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - GammaSeries(a, x);
  return GammaContinuedFraction(a, x);
}

Probability ChiSquaredSurvival(double x, int dof) {
  if (dof < 1) throw InvalidInput(fmt::format("degrees of freedom must be >= 1, got {}", dof));
  if (!(x >= 0.0)) throw InvalidInput(fmt::format("chi-squared statistic must be >= 0, got {}", x));
  if (std::isinf(x)) return Probability(kTiny);
  const double q = RegularizedGammaQ(0.5 * dof, 0.5 * x);
  return Probability(std::clamp(q, kTiny, 1.0));
}

Probability NormalTwoTailedP(double z) {
  if (std::isnan(z)) throw InvalidInput("z is NaN");
  return Probability(std::clamp(std::erfc(std::fabs(z) / std::numbers::sqrt2), 0.0, 1.0));
}

double NormalTwoTailedQuantile(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidInput(fmt::format("alpha must lie in (0, 1], got {}", alpha));
  }
  if (alpha == 1.0) return 0.0;
  // p(z) is strictly decreasing; p(40) underflows to 0 in double precision.
  double lo = 0.0, hi = 40.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (NormalTwoTailedP(mid).value() > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double p_lo = NormalTwoTailedP(lo).value();
  const double p_hi = NormalTwoTailedP(hi).value();
  return std::fabs(p_lo - alpha) <= std::fabs(p_hi - alpha) ? lo : hi;
}

}  // namespace eqfair
