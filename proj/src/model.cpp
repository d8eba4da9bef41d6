// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/model.hpp"

#include <cmath>
#include <stdexcept>

#include "uwbnotch/microstrip.hpp"
#include "uwbnotch/notch.hpp"
#include "uwbnotch/taper.hpp"

namespace uwbnotch {

AntennaModel::AntennaModel(const DesignParams& params, const ModelOptions& options) {
  params.validate();
  if (!(options.gamma_match > 0.0)) throw std::invalid_argument("gamma_match must be > 0");
  if (!(options.resonator_r_fraction > 0.0))
    throw std::invalid_argument("resonator_r_fraction must be > 0");

  notches_ = params.notches;
  eps_eff_ = effective_permittivity_simple(params.substrate.eps_r);
  phase_velocity_mps_ = kSpeedOfLightMps / std::sqrt(eps_eff_);
  feed_length_mm_ = params.feed_length_mm;
  taper_z0_ = params.taper.z0_ohm;
  taper_zl_ = params.taper.zl_ohm;
  taper_segments_ = options.taper_segments;
  r_fraction_ = options.resonator_r_fraction;
  z_ref_ = params.taper.z0_ohm;
  z_load_ = options.load_ohm > 0.0 ? options.load_ohm : params.taper.zl_ohm;

  if (options.taper_length_mm > 0.0) {
    taper_length_mm_ = options.taper_length_mm;
  } else {
    // Long enough that the taper's own reflection envelope stays at or below
    // gamma_match across the operating band; never shorter than the layout's.
    const double derived =
        min_taper_length_mm(taper_z0_, taper_zl_, options.gamma_match,
                            Frequency(options.f_low_hz), phase_velocity_mps_);
    taper_length_mm_ = std::max(derived, params.taper.length_mm);
  }
}

std::vector<double> AntennaModel::design_lengths_mm() const {
  std::vector<double> lengths;
  lengths.reserve(notches_.size());
  for (const auto& n : notches_) lengths.push_back(n.slot_length_mm);
  return lengths;
}

NetworkElement AntennaModel::network() const { return network(design_lengths_mm()); }

NetworkElement AntennaModel::network(const std::vector<double>& slot_lengths_mm) const {
  if (slot_lengths_mm.size() != notches_.size())
    throw std::invalid_argument("expected " + std::to_string(notches_.size()) +
                                " slot lengths, got " + std::to_string(slot_lengths_mm.size()));

  std::vector<NetworkElement> chain;
  chain.reserve(notches_.size() * 2 + 2);

  // Feedline-side resonators first (source side), then the feed line, then
  // the patch-side resonators spaced 0.5 mm apart, then the matching taper.
  for (size_t i = 0; i < notches_.size(); ++i) {
    if (notches_[i].slot_kind != SlotKind::kUFeedline) continue;
    NotchSpec n = notches_[i];
    n.slot_length_mm = slot_lengths_mm[i];
    chain.push_back(resonator_element(n, z_ref_, eps_eff_, r_fraction_));
  }
  chain.push_back(NetworkElement::uniform_line(z_ref_, feed_length_mm_, phase_velocity_mps_));
  for (size_t i = 0; i < notches_.size(); ++i) {
    if (notches_[i].slot_kind != SlotKind::kInvertedCPatch) continue;
    NotchSpec n = notches_[i];
    n.slot_length_mm = slot_lengths_mm[i];
    chain.push_back(resonator_element(n, z_ref_, eps_eff_, r_fraction_));
    chain.push_back(NetworkElement::uniform_line(z_ref_, 0.5, phase_velocity_mps_));
  }
  chain.push_back(taper_cascade(TaperSpec{taper_z0_, taper_zl_, taper_length_mm_, taper_segments_},
                                phase_velocity_mps_));
  return NetworkElement::chain(std::move(chain));
}

}  // namespace uwbnotch
