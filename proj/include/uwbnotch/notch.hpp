// SPDX-License-Identifier: Apache-2.0
//
// Slot-resonator sizing from target notch frequencies, the circuit-model
// surrogate for a slot, and protected service-band bookkeeping.

#ifndef UWBNOTCH_NOTCH_HPP
#define UWBNOTCH_NOTCH_HPP

#include <string>
#include <vector>

#include "uwbnotch/circuit.hpp"
#include "uwbnotch/common.hpp"

namespace uwbnotch {

/// A named frequency band, f_lo < f_hi.
struct ServiceBand {
  std::string name;
  Frequency f_lo;
  Frequency f_hi;

  ServiceBand(std::string band_name, Frequency lo, Frequency hi);
  bool contains(double f_hz) const { return f_hz >= f_lo.hz() && f_hz <= f_hi.hz(); }
};

enum class SlotKind { kInvertedCPatch, kUFeedline };

std::string to_string(SlotKind kind);
SlotKind slot_kind_from_string(const std::string& s);

/// One band-notch element: target frequency, the band it protects, and the
/// physical slot that realizes it.
struct NotchSpec {
  Frequency target_center;
  ServiceBand band;
  SlotKind slot_kind = SlotKind::kInvertedCPatch;
  double slot_length_mm = 1.0;  ///< resonant centerline length
  double slot_width_mm = 0.3;   ///< etched cut width (geometry only)
  double q_factor = 20.0;       ///< loaded Q of the circuit surrogate

  // Centerline split bridge:arm:arm used by the geometry builder.
  double bridge_ratio = 2.0;
  double arm_ratio = 1.0;

  // Optional reference length to cross-check against the synthesized value;
  // 0 means none. Reports flag disagreements beyond 2%.
  double reference_length_mm = 0.0;

  void validate() const;
};

/// Half guided wavelength c / (2 f sqrt(eps_eff)) in millimetres.
double slot_length_for_frequency_mm(const Frequency& f, double eps_eff);

/// Resonant frequency c / (2 L sqrt(eps_eff)); exact inverse of the above.
Frequency notch_frequency_from_length(double l_slot_mm, double eps_eff);

/// Shunt series-RLC surrogate for the slot, resonant at the frequency implied
/// by its length with loaded Q = q_factor on a line of impedance line_z0.
/// r_fraction sets the branch resistance as a fraction of line_z0; the
/// default keeps |S11| at resonance above 0.96 on a matched 50-ohm line.
NetworkElement resonator_element(const NotchSpec& spec, double line_z0_ohm, double eps_eff,
                                 double r_fraction = 0.02);

/// Rejection status of one protected band.
struct BandRejection {
  std::string name;
  double f_lo_hz = 0;
  double f_hi_hz = 0;
  bool rejected = false;  ///< VSWR >= 2 throughout the band
  double min_vswr = 0;
  double max_vswr = 0;
};

struct FrequencyInterval {
  double lo_hz = 0;
  double hi_hz = 0;
};

/// Band-rejection summary of a trace: per-band status, the mismatch
/// (VSWR >= 2) intervals inside the operating band, and the -10 dB passband
/// segments outside the notches.
struct RejectionReport {
  std::vector<BandRejection> bands;
  std::vector<FrequencyInterval> mismatch_intervals;  ///< VSWR >= 2 runs inside the operating band
  std::vector<FrequencyInterval> passbands_10db;      ///< |S11| <= -10 dB runs
  /// True when every mismatch interval inside the operating band overlaps a
  /// protected band, i.e. the only mismatched regions are the notches.
  bool matched_outside_notches = false;
};

/// Evaluates rejection of each protected band and passband coverage of the
/// operating band. Throws CoverageError when the trace does not span a band.
RejectionReport band_rejection_report(const S11Trace& trace,
                                      const std::vector<ServiceBand>& protected_bands,
                                      const ServiceBand& operating_band);

/// The toolkit's default protected bands (WiMAX, WLAN, X-band downlink).
std::vector<ServiceBand> default_protected_bands();

/// The UWB operating band, 3.1 - 10.6 GHz.
ServiceBand uwb_band();

}  // namespace uwbnotch

#endif  // UWBNOTCH_NOTCH_HPP
