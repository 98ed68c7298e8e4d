#pragma once

#include <cstddef>
#include <string_view>

namespace hhgeom {

enum class EstimateMethod { closed_form, quadrature, monte_carlo };

inline std::string_view to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::closed_form: return "closed_form";
    case EstimateMethod::quadrature: return "quadrature";
    case EstimateMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

/// A value with its Monte Carlo standard error (zero on exact paths).
struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;
  EstimateMethod method = EstimateMethod::closed_form;
  std::size_t samples = 0;
};

}  // namespace hhgeom
