#pragma once

#include <map>
#include <string>

#include "c0lat/error.hpp"

namespace c0lat {

/// Numerical thresholds shared by the subspace, calculus and jordan layers.
/// Every lattice computation reads its tolerances from one of these.
struct Tolerances {
  /// Largest principal angle (as a sine) up to which two subspaces are equal,
  /// and the residual bound for containment.
  double equality = 1e-7;
  /// Principal angle below which a direction belongs to an intersection.
  double meet_angle = 1e-8;
  /// Relative singular value cut-off for rank decisions.
  double rank = 1e-10;
  /// Relative invariance residual bound.
  double invariance = 1e-8;
  /// Relative intertwining residual bound.
  double intertwining = 1e-9;

  /// Applies `name=value` style overrides; unknown names are rejected.
  void apply(const std::map<std::string, double>& overrides) {
    for (const auto& [name, value] : overrides) {
      if (!(value > 0.0)) throw InputError("tolerance '" + name + "' must be positive");
      if (name == "equality") {
        equality = value;
      } else if (name == "meet_angle") {
        meet_angle = value;
      } else if (name == "rank") {
        rank = value;
      } else if (name == "invariance") {
        invariance = value;
      } else if (name == "intertwining") {
        intertwining = value;
      } else {
        throw InputError("unknown tolerance '" + name + "'");
      }
    }
  }

  std::map<std::string, double> as_map() const {
    return {{"equality", equality},
            {"intertwining", intertwining},
            {"invariance", invariance},
            {"meet_angle", meet_angle},
            {"rank", rank}};
  }
};

}  // namespace c0lat
