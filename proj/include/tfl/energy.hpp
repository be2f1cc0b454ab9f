#pragma once

namespace tfl {

struct EnergyBreakdown {
  double surface = 0.0;
  double wetting = 0.0;
  double gravity = 0.0;
  double volume_penalty = 0.0;
  double total = 0.0;
};

}  // namespace tfl
