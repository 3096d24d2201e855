#pragma once

#include <vector>

namespace suita {

/// eta0(s) = -log(-s + e^s - 1), gamma0(s) = eta0(s) + log(1 - e^s), s < 0.
struct WeightValues {
  double s = 0.0;
  double eta0 = 0.0;
  double eta0p = 0.0;
  double eta0pp = 0.0;
  double gamma0 = 0.0;
  double gamma0p = 0.0;
  /// eta0'' - gamma0'^2, evaluated without cancellation.
  double gap = 0.0;
};

/// Below this s the e^s corrections are handled in log1p form.
constexpr double kWeightSeam = -30.0;

WeightValues eval_weights(double s);
double identity_residual(double s);
std::vector<double> war_probe(const std::vector<double>& sList);

}  // namespace suita
