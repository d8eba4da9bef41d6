// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/microstrip.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uwbnotch {

namespace {

constexpr double kMinWidthOverHeight = 0.01;
constexpr double kMaxWidthOverHeight = 100.0;

// Hammerstad–Jensen characteristic impedance of the air-filled line, ohms.
double z0_air(double u) {
  const double fu = 6.0 + (2.0 * std::numbers::pi - 6.0) * std::exp(-std::pow(30.666 / u, 0.7528));
  return kFreeSpaceImpedanceOhm / (2.0 * std::numbers::pi) *
         std::log(fu / u + std::sqrt(1.0 + (2.0 / u) * (2.0 / u)));
}

double eps_eff_hj(double u, double eps_r) {
  const double u4 = u * u * u * u;
  const double a = 1.0 + std::log((u4 + std::pow(u / 52.0, 2)) / (u4 + 0.432)) / 49.0 +
                   std::log(1.0 + std::pow(u / 18.1, 3)) / 18.7;
  const double b = 0.564 * std::pow((eps_r - 0.9) / (eps_r + 3.0), 0.053);
  return (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 * std::pow(1.0 + 10.0 / u, -a * b);
}

double width_ratio_checked(double width_mm, const SubstrateSpec& sub) {
  sub.validate();
  if (!(width_mm > 0.0)) throw std::invalid_argument("microstrip width must be > 0 mm");
  const double u = width_mm / sub.height_mm;
  if (u < kMinWidthOverHeight || u > kMaxWidthOverHeight)
    throw std::out_of_range("microstrip w/h = " + std::to_string(u) +
                            " outside the supported range [0.01, 100]");
  return u;
}

}  // namespace

double effective_permittivity_simple(double eps_r) {
  if (!(eps_r >= 1.0))
    throw std::invalid_argument("eps_r must be >= 1, got " + std::to_string(eps_r));
  return (eps_r + 1.0) / 2.0;
}

double guided_wavelength_mm(const Frequency& f, double eps_eff) {
  if (!(eps_eff >= 1.0))
    throw std::invalid_argument("eps_eff must be >= 1, got " + std::to_string(eps_eff));
  return kSpeedOfLightMmps / (f.hz() * std::sqrt(eps_eff));
}

double microstrip_eps_eff(double width_mm, const SubstrateSpec& sub) {
  return eps_eff_hj(width_ratio_checked(width_mm, sub), sub.eps_r);
}

double microstrip_impedance(double width_mm, const SubstrateSpec& sub) {
  const double u = width_ratio_checked(width_mm, sub);
  return z0_air(u) / std::sqrt(eps_eff_hj(u, sub.eps_r));
}

ImpedanceRange microstrip_impedance_range(const SubstrateSpec& sub) {
  sub.validate();
  const double w_min = kMinWidthOverHeight * sub.height_mm;
  const double w_max = kMaxWidthOverHeight * sub.height_mm;
  return ImpedanceRange{microstrip_impedance(w_max, sub), microstrip_impedance(w_min, sub)};
}

double microstrip_width_for_impedance(double z0_ohm, const SubstrateSpec& sub) {
  sub.validate();
  if (!(z0_ohm > 0.0)) throw std::invalid_argument("target impedance must be > 0 ohm");

  double lo = kMinWidthOverHeight * sub.height_mm;  // highest impedance
  double hi = kMaxWidthOverHeight * sub.height_mm;  // lowest impedance
  const ImpedanceRange range = microstrip_impedance_range(sub);
  if (z0_ohm > range.max_ohm || z0_ohm < range.min_ohm)
    throw std::out_of_range("impedance " + std::to_string(z0_ohm) +
                            " ohm not achievable within w/h in [0.01, 100]; range is [" +
                            std::to_string(range.min_ohm) + ", " + std::to_string(range.max_ohm) +
                            "]");

  // Impedance is strictly decreasing in width, so plain bisection converges.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double z = microstrip_impedance(mid, sub);
    if (std::abs(z - z0_ohm) < 1e-6) return mid;
    if (z > z0_ohm)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * sub.height_mm) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace uwbnotch
