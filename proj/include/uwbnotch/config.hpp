// SPDX-License-Identifier: Apache-2.0
//
// Single JSON configuration driving every CLI command. Frequencies are
// hertz, lengths millimetres. Fields left out fall back to the reference
// design; present fields are type- and range-checked with JSON-path errors.

#ifndef UWBNOTCH_CONFIG_HPP
#define UWBNOTCH_CONFIG_HPP

#include <json.hpp>
#include <string>

#include "uwbnotch/geometry.hpp"
#include "uwbnotch/model.hpp"
#include "uwbnotch/notch.hpp"

namespace uwbnotch {

struct SweepSpec {
  double f_lo_hz = 2.0e9;
  double f_hi_hz = 12.0e9;
  double step_hz = 1.0e7;

  Eigen::ArrayXd grid() const { return linear_grid_hz(f_lo_hz, f_hi_hz, step_hz); }
};

struct TuneSpec {
  double tolerance_hz = 1.0e7;
  int max_iterations = 500;
};

struct DesignConfig {
  DesignParams design;
  ModelOptions model;
  SweepSpec sweep;
  ServiceBand uwb = uwb_band();
  TuneSpec tune;
  std::string output_dir = "out";
  /// Used to synthesize the patch radius when patch_radius_mm is omitted.
  double patch_design_frequency_hz = 0.0;
};

/// The reference FR-4 design with its three stock notches.
DesignConfig default_config();

/// Parses and fully validates a configuration document. Omitted notch
/// lengths are synthesized from their targets; an omitted patch radius is
/// synthesized from patch_design_frequency_hz.
DesignConfig parse_config(const nlohmann::json& doc);

/// Reads, parses and validates a configuration file.
DesignConfig load_config_file(const std::string& path);

/// Serialized form of a configuration (round-trips through parse_config).
nlohmann::json config_to_json(const DesignConfig& config);

/// Per-notch sizing summary: the synthesized half-wave length versus the
/// configured/reference lengths, with disagreements beyond 2% flagged.
struct SlotSizingRow {
  std::string name;
  double target_hz = 0;
  double design_length_mm = 0;      ///< length carried by the design
  double synthesized_length_mm = 0; ///< half-wave length for the target
  double reference_length_mm = 0;   ///< optional cross-check value (0 = none)
  double reference_deviation_percent = 0;
  bool flagged = false;
};
std::vector<SlotSizingRow> slot_sizing_rows(const std::vector<NotchSpec>& notches, double eps_eff);

}  // namespace uwbnotch

#endif  // UWBNOTCH_CONFIG_HPP
