#pragma once

#include <stdexcept>
#include <string>

namespace helmdg {

enum class BetaScaling { InverseEdge, Constant };
enum class DeltaScaling { Edge, Constant };

/// Penalty parameters of the numerical fluxes. The reference choice is
/// beta = 0.001 / h_e and delta = 0.1 h_e with h_e the true edge length
/// (the diagonals of the structured mesh get sqrt(2)/m).
struct FluxParams {
  double beta0 = 0.001;
  double delta0 = 0.1;
  BetaScaling beta_scaling = BetaScaling::InverseEdge;
  DeltaScaling delta_scaling = DeltaScaling::Edge;

  double beta_on(double h_e) const {
    return beta_scaling == BetaScaling::InverseEdge ? beta0 / h_e : beta0;
  }
  double delta_on(double h_e) const {
    return delta_scaling == DeltaScaling::Edge ? delta0 * h_e : delta0;
  }
};

inline std::string to_string(BetaScaling s) {
  return s == BetaScaling::InverseEdge ? "inv-edge" : "const";
}
inline std::string to_string(DeltaScaling s) {
  return s == DeltaScaling::Edge ? "edge" : "const";
}

inline BetaScaling beta_scaling_from_string(const std::string& s) {
  if (s == "inv-edge") return BetaScaling::InverseEdge;
  if (s == "const") return BetaScaling::Constant;
  throw std::invalid_argument("unknown beta scaling '" + s + "' (use inv-edge or const)");
}
inline DeltaScaling delta_scaling_from_string(const std::string& s) {
  if (s == "edge") return DeltaScaling::Edge;
  if (s == "const") return DeltaScaling::Constant;
  throw std::invalid_argument("unknown delta scaling '" + s + "' (use edge or const)");
}

}  // namespace helmdg
