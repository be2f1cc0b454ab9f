#include "tfl/tensions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tfl/error.hpp"
#include "tfl/geometry.hpp"

namespace tfl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::StrictTriangularityViolated: return "StrictTriangularityViolated";
    case ErrorKind::VertexSingularity: return "VertexSingularity";
    case ErrorKind::NoInteriorMinimum: return "NoInteriorMinimum";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::OpeningTooWide: return "OpeningTooWide";
    case ErrorKind::DiskTooSmall: return "DiskTooSmall";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NotStationary: return "NotStationary";
    case ErrorKind::TangentialCrossing: return "TangentialCrossing";
    case ErrorKind::InfeasibleVolumes: return "InfeasibleVolumes";
    case ErrorKind::FrozenRingTooThin: return "FrozenRingTooThin";
    case ErrorKind::BallOutsideDomain: return "BallOutsideDomain";
    case ErrorKind::NoJunctionInWindow: return "NoJunctionInWindow";
    case ErrorKind::MultipleJunctions: return "MultipleJunctions";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::NoInteriorMinimum:
    case ErrorKind::NotStationary:
    case ErrorKind::NoJunctionInWindow:
    case ErrorKind::MultipleJunctions:
      return true;
    default:
      return false;
  }
}

namespace {

constexpr double kTriangularityTol = 1e-12;

void check_triangularity(double s01, double s02, double s12) {
  const AlphaWeights a = alphas_from_sigmas(s01, s02, s12);
  const double floor = kTriangularityTol * std::max({s01, s02, s12});
  if (a.alpha0 <= floor || a.alpha1 <= floor || a.alpha2 <= floor) {
    std::ostringstream os;
    os << "alphas (" << a.alpha0 << ", " << a.alpha1 << ", " << a.alpha2
       << ") not all above " << floor;
    throw Error(ErrorKind::StrictTriangularityViolated, os.str());
  }
}

}  // namespace

SurfaceTensions::SurfaceTensions(double sigma01, double sigma02, double sigma12)
    : sigma01_(sigma01), sigma02_(sigma02), sigma12_(sigma12) {
  if (!(sigma01 > 0.0) || !(sigma02 > 0.0) || !(sigma12 > 0.0) || !std::isfinite(sigma01) ||
      !std::isfinite(sigma02) || !std::isfinite(sigma12)) {
    throw Error(ErrorKind::InvalidInput, "surface tensions must be positive and finite");
  }
  check_triangularity(sigma01, sigma02, sigma12);
}

double SurfaceTensions::max() const { return std::max({sigma01_, sigma02_, sigma12_}); }

double SurfaceTensions::sigma(int i, int j) const {
  if (i == j) return 0.0;
  switch (i + j) {
    case 1: return sigma01_;
    case 2: return sigma02_;
    default: return sigma12_;
  }
}

SurfaceTensions SurfaceTensions::relabeled(const std::array<int, 3>& map) const {
  return SurfaceTensions(sigma(map[0], map[1]), sigma(map[0], map[2]), sigma(map[1], map[2]));
}

SurfaceTensions SurfaceTensions::scaled(double factor) const {
  return SurfaceTensions(factor * sigma01_, factor * sigma02_, factor * sigma12_);
}

double NeumannAngles::between(int i, int j) const {
  switch (i + j) {
    case 1: return gamma01;
    case 2: return gamma02;
    default: return gamma12;
  }
}

AlphaWeights alphas_from_sigmas(double s01, double s02, double s12) {
  AlphaWeights a{0.5 * (s01 + s02 - s12), 0.5 * (s01 + s12 - s02), 0.5 * (s02 + s12 - s01)};
  if (a.alpha0 <= 0.0 || a.alpha1 <= 0.0 || a.alpha2 <= 0.0) {
    std::ostringstream os;
    os << "alphas (" << a.alpha0 << ", " << a.alpha1 << ", " << a.alpha2 << ")";
    throw Error(ErrorKind::StrictTriangularityViolated, os.str());
  }
  return a;
}

AlphaWeights alphas_from_sigmas(const SurfaceTensions& s) {
  return alphas_from_sigmas(s.sigma01(), s.sigma02(), s.sigma12());
}

namespace {

// Angle opposite side `a` in the triangle with sides a, b, c.
double opposite_angle(double a, double b, double c) {
  const double cosine = (b * b + c * c - a * a) / (2.0 * b * c);
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

}  // namespace

NeumannAngles neumann_angles(const SurfaceTensions& s) {
  const double s01 = s.sigma01(), s02 = s.sigma02(), s12 = s.sigma12();
  return NeumannAngles{kPi - opposite_angle(s01, s02, s12), kPi - opposite_angle(s02, s01, s12),
                       kPi - opposite_angle(s12, s01, s02)};
}

bool EnergyParams::massari_admissible() const {
  const AlphaWeights a = alphas_from_sigmas(sigmas);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (a[i] + a[j] < std::abs(beta[i] - beta[j])) return false;
    }
  }
  return true;
}

void EnergyParams::validate() const {
  if (!massari_admissible()) {
    throw Error(ErrorKind::InvalidInput,
                "wetting coefficients violate alpha_i + alpha_j >= |beta_i - beta_j|");
  }
}

}  // namespace tfl
