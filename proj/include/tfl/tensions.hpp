#pragma once

#include <array>

namespace tfl {

// Fluid labels are 0, 1, 2. A pair (i, j) names the interface between fluids
// i and j; the "opposite" fluid k is the remaining label.
inline constexpr int opposite_fluid(int i, int j) { return 3 - i - j; }

// Interfacial tensions, energy per unit interface length. All constants in
// this library are dimensionless.
class SurfaceTensions {
 public:
  // Throws StrictTriangularityViolated unless every derived alpha_j exceeds
  // 1e-12 * max(sigma); throws InvalidInput for non-positive entries.
  SurfaceTensions(double sigma01, double sigma02, double sigma12);

  double sigma01() const { return sigma01_; }
  double sigma02() const { return sigma02_; }
  double sigma12() const { return sigma12_; }
  double max() const;

  // sigma(i, i) == 0.
  double sigma(int i, int j) const;

  // Tensions seen through a relabeling: result.sigma(a, b) == sigma(map[a], map[b]).
  SurfaceTensions relabeled(const std::array<int, 3>& map) const;

  SurfaceTensions scaled(double factor) const;

 private:
  double sigma01_, sigma02_, sigma12_;
};

struct AlphaWeights {
  double alpha0, alpha1, alpha2;
  double operator[](int j) const { return j == 0 ? alpha0 : (j == 1 ? alpha1 : alpha2); }
};

// gamma_ij is the opening of the sector occupied by the opposite fluid k.
struct NeumannAngles {
  double gamma01, gamma02, gamma12;  // radians

  double between(int i, int j) const;
  // Opening of the sector occupied by `fluid`.
  double of_fluid(int fluid) const { return fluid == 0 ? gamma12 : (fluid == 1 ? gamma02 : gamma01); }
};

// alpha_0 = (s01 + s02 - s12)/2 etc. Throws StrictTriangularityViolated when
// any alpha_j <= 0 (so it accepts raw values, unlike the SurfaceTensions ctor).
AlphaWeights alphas_from_sigmas(double sigma01, double sigma02, double sigma12);
AlphaWeights alphas_from_sigmas(const SurfaceTensions& s);

// Gamma_ij = pi - theta_ij, with theta_ij the angle opposite side sigma_ij of
// the triangle with side lengths (sigma01, sigma02, sigma12). Law of cosines.
NeumannAngles neumann_angles(const SurfaceTensions& s);

struct EnergyParams {
  SurfaceTensions sigmas{1.0, 1.0, 1.0};
  std::array<double, 3> beta{0.0, 0.0, 0.0};
  std::array<double, 3> rho{0.0, 0.0, 0.0};
  double g = 0.0;

  // alpha_i + alpha_j >= |beta_i - beta_j| for all pairs.
  bool massari_admissible() const;
  // Throws InvalidInput when not admissible.
  void validate() const;
};

}  // namespace tfl
