// report.hpp
//
// MomentReport: a computed quantity next to the main term it is compared with.

#pragma once

#include <optional>
#include <string>

namespace hardy {

struct MomentReport {
  double T = 0.0;
  double value = 0.0;
  std::optional<double> predicted;
  std::optional<double> residual;
  std::string normalization;

  static MomentReport measured(double T, double value, std::string tag) {
    return MomentReport{T, value, std::nullopt, std::nullopt, std::move(tag)};
  }
  static MomentReport compared(double T, double value, double predicted, std::string tag) {
    return MomentReport{T, value, predicted, value - predicted, std::move(tag)};
  }
};

}  // namespace hardy
