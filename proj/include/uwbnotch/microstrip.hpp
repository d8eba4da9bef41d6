// SPDX-License-Identifier: Apache-2.0
//
// Microstrip transmission-line physics shared by the rest of the toolkit:
// the simplified substrate permittivity, guided wavelength, and the
// quasi-static characteristic impedance with its inverse (width synthesis).

#ifndef UWBNOTCH_MICROSTRIP_HPP
#define UWBNOTCH_MICROSTRIP_HPP

#include "uwbnotch/common.hpp"
#include "uwbnotch/substrate.hpp"

namespace uwbnotch {

/// Simplified effective permittivity (eps_r + 1)/2 used for slot sizing.
/// Distinct from the width-dependent quasi-static value inside
/// microstrip_impedance; the two are never mixed.
double effective_permittivity_simple(double eps_r);

/// Guided wavelength c / (f * sqrt(eps_eff)) in millimetres.
double guided_wavelength_mm(const Frequency& f, double eps_eff);

/// Width-dependent quasi-static effective permittivity (Hammerstad–Jensen).
double microstrip_eps_eff(double width_mm, const SubstrateSpec& sub);

/// Quasi-static characteristic impedance of a microstrip of the given width.
/// Uses the smooth Hammerstad–Jensen closed form; strictly decreasing in
/// width. Accuracy is best for 0.1 <= w/h <= 10; evaluation outside
/// 0.01 <= w/h <= 100 is an error, not an extrapolation.
double microstrip_impedance(double width_mm, const SubstrateSpec& sub);

/// Width whose impedance equals z0 within 0.01 ohm, found by bisection on
/// the monotone curve over widths 0.01*h .. 100*h. Throws std::out_of_range
/// if z0 is not bracketed by that range.
double microstrip_width_for_impedance(double z0_ohm, const SubstrateSpec& sub);

/// Impedance values achievable within the bisection bracket, as (min, max).
struct ImpedanceRange {
  double min_ohm;
  double max_ohm;
};
ImpedanceRange microstrip_impedance_range(const SubstrateSpec& sub);

}  // namespace uwbnotch

#endif  // UWBNOTCH_MICROSTRIP_HPP
