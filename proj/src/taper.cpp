// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/taper.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uwbnotch {

void TaperSpec::validate() const {
  if (!(z0_ohm > 0.0)) throw std::invalid_argument("taper z0_ohm must be > 0");
  if (!(zl_ohm > 0.0)) throw std::invalid_argument("taper zl_ohm must be > 0");
  if (!(length_mm > 0.0)) throw std::invalid_argument("taper length_mm must be > 0");
  if (segments < 2) throw std::invalid_argument("taper segments must be >= 2");
}

double taper_exponent_per_mm(const TaperSpec& spec) {
  spec.validate();
  return std::log(spec.zl_ohm / spec.z0_ohm) / spec.length_mm;
}

double taper_impedance_at(double z_mm, const TaperSpec& spec) {
  spec.validate();
  if (z_mm < 0.0 || z_mm > spec.length_mm)
    throw std::out_of_range("taper position " + std::to_string(z_mm) + " mm outside [0, " +
                            std::to_string(spec.length_mm) + "]");
  if (z_mm == 0.0) return spec.z0_ohm;
  if (z_mm == spec.length_mm) return spec.zl_ohm;
  return spec.z0_ohm * std::exp(taper_exponent_per_mm(spec) * z_mm);
}

Complex analytic_taper_reflection(double beta_l, double z0_ohm, double zl_ohm) {
  if (beta_l < 0.0) throw std::invalid_argument("beta_l must be >= 0");
  if (!(z0_ohm > 0.0 && zl_ohm > 0.0)) throw std::invalid_argument("impedances must be > 0");
  const double half_log = 0.5 * std::log(zl_ohm / z0_ohm);
  // Removable singularity: sinc -> 1 as beta_l -> 0.
  const double sinc = beta_l < 1e-9 ? 1.0 : std::sin(beta_l) / beta_l;
  return half_log * sinc * std::exp(Complex(0.0, -beta_l));
}

NetworkElement taper_cascade(const TaperSpec& spec, double phase_velocity_mps) {
  spec.validate();
  const double dz = spec.length_mm / spec.segments;
  const double a = taper_exponent_per_mm(spec);
  std::vector<NetworkElement> sections;
  sections.reserve(static_cast<size_t>(spec.segments));
  for (int i = 0; i < spec.segments; ++i) {
    // Midpoint sampling halves the leading discretization error versus
    // endpoint sampling.
    const double z_mid = (static_cast<double>(i) + 0.5) * dz;
    sections.push_back(NetworkElement::uniform_line(spec.z0_ohm * std::exp(a * z_mid), dz,
                                                    phase_velocity_mps));
  }
  return NetworkElement::chain(std::move(sections));
}

Complex numeric_taper_reflection(const TaperSpec& spec, const Frequency& f,
                                 double phase_velocity_mps) {
  const NetworkElement net = taper_cascade(spec, phase_velocity_mps);
  return s11_from_abcd(net.abcd_at(f.hz()), spec.z0_ohm, spec.zl_ohm);
}

double min_taper_length_mm(double z0_ohm, double zl_ohm, double gamma_max,
                           const Frequency& f_low, double phase_velocity_mps) {
  if (!(z0_ohm > 0.0 && zl_ohm > 0.0)) throw std::invalid_argument("impedances must be > 0");
  if (!(gamma_max > 0.0)) throw std::invalid_argument("gamma_max must be > 0");
  if (!(phase_velocity_mps > 0.0)) throw std::invalid_argument("phase velocity must be > 0");

  const double half_log = 0.5 * std::abs(std::log(zl_ohm / z0_ohm));
  if (gamma_max >= half_log) return 0.0;

  // The envelope decays as 1/beta_l and beta_l grows with f, so the binding
  // constraint sits at f_low.
  const double beta_l_required = half_log / gamma_max;
  return beta_l_required * phase_velocity_mps / (2.0 * std::numbers::pi * f_low.hz()) * 1e3;
}

std::vector<ReflectionSample> analytic_reflection_sweep(const std::vector<double>& beta_l,
                                                        double z0_ohm, double zl_ohm) {
  std::vector<ReflectionSample> out;
  out.reserve(beta_l.size());
  for (double bl : beta_l) out.push_back({bl, analytic_taper_reflection(bl, z0_ohm, zl_ohm)});
  return out;
}

}  // namespace uwbnotch
