// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/notch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uwbnotch/microstrip.hpp"

namespace uwbnotch {

ServiceBand::ServiceBand(std::string band_name, Frequency lo, Frequency hi)
    : name(std::move(band_name)), f_lo(lo), f_hi(hi) {
  if (!(f_lo < f_hi))
    throw std::invalid_argument("band '" + name + "' requires f_lo < f_hi");
}

std::string to_string(SlotKind kind) {
  return kind == SlotKind::kInvertedCPatch ? "inverted-C-patch" : "U-feedline";
}

SlotKind slot_kind_from_string(const std::string& s) {
  if (s == "inverted-C-patch") return SlotKind::kInvertedCPatch;
  if (s == "U-feedline") return SlotKind::kUFeedline;
  throw std::invalid_argument("unknown slot kind '" + s +
                              "' (expected inverted-C-patch or U-feedline)");
}

void NotchSpec::validate() const {
  if (!(slot_length_mm > 0.0)) throw std::invalid_argument("slot_length_mm must be > 0");
  if (!(slot_width_mm > 0.0)) throw std::invalid_argument("slot_width_mm must be > 0");
  if (!(q_factor > 0.0)) throw std::invalid_argument("q_factor must be > 0");
  if (!(bridge_ratio > 0.0 && arm_ratio > 0.0))
    throw std::invalid_argument("slot bridge/arm ratios must be > 0");
  if (!band.contains(target_center.hz()))
    throw std::invalid_argument("notch target " + std::to_string(target_center.ghz()) +
                                " GHz lies outside band '" + band.name + "'");
}

double slot_length_for_frequency_mm(const Frequency& f, double eps_eff) {
  // Half of the guided wavelength at the notch frequency.
  return guided_wavelength_mm(f, eps_eff) / 2.0;
}

Frequency notch_frequency_from_length(double l_slot_mm, double eps_eff) {
  if (!(l_slot_mm > 0.0)) throw std::invalid_argument("slot length must be > 0 mm");
  if (!(eps_eff >= 1.0)) throw std::invalid_argument("eps_eff must be >= 1");
  return Frequency(kSpeedOfLightMmps / (2.0 * l_slot_mm * std::sqrt(eps_eff)));
}

NetworkElement resonator_element(const NotchSpec& spec, double line_z0_ohm, double eps_eff,
                                 double r_fraction) {
  spec.validate();
  if (!(line_z0_ohm > 0.0)) throw std::invalid_argument("line impedance must be > 0 ohm");
  if (!(r_fraction > 0.0)) throw std::invalid_argument("r_fraction must be > 0");

  const double f0 = notch_frequency_from_length(spec.slot_length_mm, eps_eff).hz();
  const double w0 = 2.0 * std::numbers::pi * f0;
  const double r = r_fraction * line_z0_ohm;
  // Loaded Q on a matched line: the branch sees z0/2 in series with its own R.
  const double l = spec.q_factor * (r + line_z0_ohm / 2.0) / w0;
  const double c = 1.0 / (w0 * w0 * l);
  return NetworkElement::shunt_series_rlc(r, l, c);
}

namespace {

// Maximal index runs [first, last] where pred holds.
template <typename Pred>
std::vector<std::pair<Eigen::Index, Eigen::Index>> runs_where(Eigen::Index n, Pred pred) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pred(i)) {
      if (start < 0) start = i;
    } else if (start >= 0) {
      out.emplace_back(start, i - 1);
      start = -1;
    }
  }
  if (start >= 0) out.emplace_back(start, n - 1);
  return out;
}

}  // namespace

RejectionReport band_rejection_report(const S11Trace& trace,
                                      const std::vector<ServiceBand>& protected_bands,
                                      const ServiceBand& operating_band) {
  if (trace.size() == 0) throw CoverageError("empty trace");
  const double f_min = trace.freq_hz[0];
  const double f_max = trace.freq_hz[trace.size() - 1];
  auto require_cover = [&](const ServiceBand& b) {
    if (b.f_lo.hz() < f_min || b.f_hi.hz() > f_max)
      throw CoverageError("trace [" + std::to_string(f_min) + ", " + std::to_string(f_max) +
                          "] Hz does not span band '" + b.name + "'");
  };
  require_cover(operating_band);

  const Eigen::ArrayXd vswr = trace.vswr();
  const Eigen::ArrayXd db = trace.magnitude_db();

  RejectionReport report;
  for (const ServiceBand& band : protected_bands) {
    require_cover(band);
    BandRejection entry;
    entry.name = band.name;
    entry.f_lo_hz = band.f_lo.hz();
    entry.f_hi_hz = band.f_hi.hz();
    bool any = false;
    bool all_ge2 = true;
    for (Eigen::Index i = 0; i < trace.size(); ++i) {
      if (!band.contains(trace.freq_hz[i])) continue;
      if (!any) {
        entry.min_vswr = entry.max_vswr = vswr[i];
        any = true;
      } else {
        entry.min_vswr = std::min(entry.min_vswr, vswr[i]);
        entry.max_vswr = std::max(entry.max_vswr, vswr[i]);
      }
      if (vswr[i] < 2.0) all_ge2 = false;
    }
    if (!any) throw CoverageError("no trace samples inside band '" + band.name + "'");
    entry.rejected = all_ge2;
    report.bands.push_back(entry);
  }

  // VSWR >= 2 runs inside the operating band.
  const auto in_band = [&](Eigen::Index i) {
    return operating_band.contains(trace.freq_hz[i]) && vswr[i] >= 2.0;
  };
  for (auto [a, b] : runs_where(trace.size(), in_band))
    report.mismatch_intervals.push_back({trace.freq_hz[a], trace.freq_hz[b]});

  // -10 dB passband segments over the whole sweep.
  const auto matched10 = [&](Eigen::Index i) { return db[i] <= -10.0; };
  for (auto [a, b] : runs_where(trace.size(), matched10))
    report.passbands_10db.push_back({trace.freq_hz[a], trace.freq_hz[b]});

  report.matched_outside_notches = true;
  for (const auto& gap : report.mismatch_intervals) {
    bool overlaps_protected = false;
    for (const ServiceBand& band : protected_bands)
      if (gap.lo_hz <= band.f_hi.hz() && gap.hi_hz >= band.f_lo.hz()) {
        overlaps_protected = true;
        break;
      }
    if (!overlaps_protected) {
      report.matched_outside_notches = false;
      break;
    }
  }
  return report;
}

std::vector<ServiceBand> default_protected_bands() {
  return {ServiceBand("WiMAX", Frequency(3.3e9), Frequency(3.7e9)),
          ServiceBand("WLAN", Frequency(5.15e9), Frequency(5.825e9)),
          ServiceBand("X-band downlink", Frequency(7.25e9), Frequency(7.75e9))};
}

ServiceBand uwb_band() { return ServiceBand("UWB", Frequency(3.1e9), Frequency(10.6e9)); }

}  // namespace uwbnotch
