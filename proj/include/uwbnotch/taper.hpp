// SPDX-License-Identifier: Apache-2.0
//
// Exponential impedance-taper synthesis and reflection analysis. The
// analytic small-reflection formula is paired with an independent numeric
// oracle built from a fine cascade of uniform line segments.

#ifndef UWBNOTCH_TAPER_HPP
#define UWBNOTCH_TAPER_HPP

#include <complex>
#include <vector>

#include "uwbnotch/circuit.hpp"
#include "uwbnotch/common.hpp"

namespace uwbnotch {

/// Exponential transformer: impedance z0 at the source end rising (or
/// falling) to zl at the load end over length_mm.
struct TaperSpec {
  double z0_ohm = 50.0;
  double zl_ohm = 50.0;
  double length_mm = 1.0;
  int segments = 1024;  ///< discretization count for the numeric cascade

  void validate() const;
};

/// One point of a reflection-versus-electrical-length sweep.
struct ReflectionSample {
  double beta_l;  ///< electrical length, radians
  Complex gamma;
};

/// Exponent a = ln(zl/z0) / L, per mm. Zero when the ends match; the sign
/// follows the impedance ratio.
double taper_exponent_per_mm(const TaperSpec& spec);

/// Impedance z0 * exp(a z) at position z along the taper. The endpoints are
/// returned exactly. Throws std::out_of_range outside [0, L].
double taper_impedance_at(double z_mm, const TaperSpec& spec);

/// Small-reflection input coefficient (ln(zl/z0)/2) e^{-i beta_l} sinc(beta_l),
/// with the limiting value ln(zl/z0)/2 at beta_l = 0.
Complex analytic_taper_reflection(double beta_l, double z0_ohm, double zl_ohm);

/// Stair-stepped discretization of the taper: `segments` uniform lines whose
/// impedances sample the exponential profile at segment midpoints.
NetworkElement taper_cascade(const TaperSpec& spec, double phase_velocity_mps);

/// Input reflection of the discretized taper terminated in zl, referenced to
/// z0 — the numeric oracle for the analytic formula. Same computation path
/// as sweep() over the cascade.
Complex numeric_taper_reflection(const TaperSpec& spec, const Frequency& f,
                                 double phase_velocity_mps);

/// Smallest length whose reflection envelope ln(zl/z0)/(2 beta_l) stays at or
/// below gamma_max for every frequency >= f_low. Returns 0 when the envelope
/// is already satisfied at zero length.
double min_taper_length_mm(double z0_ohm, double zl_ohm, double gamma_max,
                           const Frequency& f_low, double phase_velocity_mps);

/// Analytic reflection over a beta_l grid; convenience for tables and plots.
std::vector<ReflectionSample> analytic_reflection_sweep(const std::vector<double>& beta_l,
                                                        double z0_ohm, double zl_ohm);

}  // namespace uwbnotch

#endif  // UWBNOTCH_TAPER_HPP
