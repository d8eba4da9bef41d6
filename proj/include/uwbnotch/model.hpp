// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional circuit surrogate of the antenna: shunt slot resonators on
// the matched feed section, followed by the exponential matching taper into
// the patch-edge load. The radiating patch is modelled as a constant real
// impedance over the band — the model's main fidelity limit.

#ifndef UWBNOTCH_MODEL_HPP
#define UWBNOTCH_MODEL_HPP

#include <vector>

#include "uwbnotch/circuit.hpp"
#include "uwbnotch/geometry.hpp"

namespace uwbnotch {

struct ModelOptions {
  /// Reflection-envelope target for the analysis taper at f_low. The
  /// physical taper length is a layout quantity; the analysis taper must be
  /// long enough to realize the matched-over-UWB premise.
  double gamma_match = 0.05;
  double f_low_hz = 3.1e9;
  /// Overrides the derived analysis-taper length when positive.
  double taper_length_mm = 0.0;
  int taper_segments = 1024;
  /// Resonator branch resistance as a fraction of the local line impedance.
  double resonator_r_fraction = 0.02;
  /// Load impedance; 0 means the taper's zl.
  double load_ohm = 0.0;
};

/// Immutable surrogate builder: produces the network for any candidate set
/// of slot lengths, keeping every other parameter fixed.
class AntennaModel {
 public:
  AntennaModel(const DesignParams& params, const ModelOptions& options);

  /// Network with the design's own slot lengths.
  NetworkElement network() const;
  /// Network with overridden slot lengths (one per notch, in notch order).
  NetworkElement network(const std::vector<double>& slot_lengths_mm) const;

  double z_ref_ohm() const { return z_ref_; }
  double z_load_ohm() const { return z_load_; }
  double eps_eff() const { return eps_eff_; }
  double analysis_taper_length_mm() const { return taper_length_mm_; }
  const std::vector<NotchSpec>& notches() const { return notches_; }

  /// Design slot lengths in notch order.
  std::vector<double> design_lengths_mm() const;

 private:
  std::vector<NotchSpec> notches_;
  double z_ref_ = 50.0;
  double z_load_ = 50.0;
  double eps_eff_ = 2.7;
  double phase_velocity_mps_ = 0.0;
  double feed_length_mm_ = 0.0;
  double taper_length_mm_ = 0.0;
  double taper_z0_ = 50.0;
  double taper_zl_ = 50.0;
  int taper_segments_ = 1024;
  double r_fraction_ = 0.02;
};

}  // namespace uwbnotch

#endif  // UWBNOTCH_MODEL_HPP
