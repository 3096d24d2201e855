#include "suita/weights.hpp"

#include <cmath>

#include "suita/error.hpp"

namespace suita {

namespace {

void require_negative(double s) {
  if (!(s < 0.0)) throw Error(ErrorKind::DomainError, "weights are defined for s < 0");
}

// sum_{k>=2} c_k s^k / k! for small |s|
template <class Coef>
double small_series(double s, Coef coef) {
  double term = s, sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    term *= s / k;
    sum += coef(k) * term;
  }
  return sum;
}

// D = -s + e^s - 1
double denominator(double s) {
  if (s > -0.5) return small_series(s, [](int) { return 1.0; });
  return std::expm1(s) - s;
}

// A^2 - e^s D = 1 - e^s (1 - s), with A = 1 - e^s
double numerator(double s) {
  if (s > -0.5) return small_series(s, [](int k) { return k - 1.0; });
  return -std::expm1(s) + s * std::exp(s);
}

}  // namespace

WeightValues eval_weights(double s) {
  require_negative(s);
  const double e = std::exp(s);
  const double a = -std::expm1(s);
  const double d = denominator(s);
  const double n = numerator(s);
  WeightValues v;
  v.s = s;
  v.eta0 = -std::log(d);
  v.eta0p = a / d;
  v.eta0pp = n / (d * d);
  v.gamma0 = v.eta0 + (s < kWeightSeam ? std::log1p(-e) : std::log(a));
  v.gamma0p = v.eta0p - e / a;
  v.gap = e * n / (d * a * a);
  return v;
}

double identity_residual(double s) {
  const WeightValues v = eval_weights(s);
  // (1 - gamma'^2/eta'') e^{2 gamma - eta - s}, assembled in log form
  const double logTerm = std::log(v.gap / v.eta0pp) + 2.0 * v.gamma0 - v.eta0 - s;
  return std::abs(std::expm1(logTerm));
}

std::vector<double> war_probe(const std::vector<double>& sList) {
  std::vector<double> out;
  out.reserve(sList.size());
  for (double s : sList) {
    require_negative(s);
    if (s < kWeightSeam) {
      // the expression reduces to log(1 - e^s)
      out.push_back(std::log1p(-std::exp(s)));
      continue;
    }
    const WeightValues v = eval_weights(s);
    out.push_back(2.0 * v.gamma0 - v.eta0 - std::log(v.eta0p));
  }
  return out;
}

}  // namespace suita
