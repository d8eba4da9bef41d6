// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace uwbnotch {

namespace {

constexpr Complex kImagUnit{0.0, 1.0};

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out += buf;
}

}  // namespace

AbcdMatrix abcd_uniform_line(double z0_ohm, double theta_rad) {
  if (!(z0_ohm > 0.0)) throw std::invalid_argument("line impedance must be > 0 ohm");
  const double c = std::cos(theta_rad);
  const double s = std::sin(theta_rad);
  AbcdMatrix m;
  m << Complex(c, 0.0), kImagUnit * (z0_ohm * s), kImagUnit * (s / z0_ohm), Complex(c, 0.0);
  return m;
}

AbcdMatrix abcd_shunt_admittance(Complex y_siemens) {
  AbcdMatrix m;
  m << Complex(1.0, 0.0), Complex(0.0, 0.0), y_siemens, Complex(1.0, 0.0);
  return m;
}

AbcdMatrix cascade(std::span<const AbcdMatrix> elements) {
  if (elements.empty()) throw std::invalid_argument("cascade of an empty element list");
  AbcdMatrix acc = elements[0];
  for (size_t i = 1; i < elements.size(); ++i) acc = acc * elements[i];
  return acc;
}

Complex input_impedance(const AbcdMatrix& m, Complex z_load_ohm) {
  const Complex den = m(1, 0) * z_load_ohm + m(1, 1);
  if (std::abs(den) < 1e-15)
    throw SingularNetworkError("input impedance undefined: C*Zl + D is singular");
  return (m(0, 0) * z_load_ohm + m(0, 1)) / den;
}

Complex s11_from_abcd(const AbcdMatrix& m, double z_ref_ohm, double z_load_ohm) {
  if (!(z_ref_ohm > 0.0)) throw std::invalid_argument("reference impedance must be > 0 ohm");
  if (!(z_load_ohm > 0.0)) throw std::invalid_argument("load impedance must be > 0 ohm");
  const Complex zin = input_impedance(m, Complex(z_load_ohm, 0.0));
  return (zin - z_ref_ohm) / (zin + z_ref_ohm);
}

NetworkElement NetworkElement::uniform_line(double z0_ohm, double length_mm,
                                            double phase_velocity_mps) {
  if (!(z0_ohm > 0.0)) throw std::invalid_argument("line impedance must be > 0 ohm");
  if (!(length_mm > 0.0)) throw std::invalid_argument("line length must be > 0 mm");
  if (!(phase_velocity_mps > 0.0)) throw std::invalid_argument("phase velocity must be > 0 m/s");
  return NetworkElement(Kind::kLine, z0_ohm, length_mm, phase_velocity_mps);
}

NetworkElement NetworkElement::shunt_series_rlc(double r_ohm, double l_henry, double c_farad) {
  if (!(r_ohm >= 0.0)) throw std::invalid_argument("resonator R must be >= 0 ohm");
  if (!(l_henry > 0.0)) throw std::invalid_argument("resonator L must be > 0 H");
  if (!(c_farad > 0.0)) throw std::invalid_argument("resonator C must be > 0 F");
  return NetworkElement(Kind::kShuntRlc, r_ohm, l_henry, c_farad);
}

NetworkElement NetworkElement::chain(std::vector<NetworkElement> elements) {
  if (elements.empty()) throw std::invalid_argument("cascade of an empty element list");
  NetworkElement e(Kind::kCascade, 0, 0, 0);
  e.children_ = std::move(elements);
  return e;
}

AbcdMatrix NetworkElement::abcd_at(double f_hz) const {
  if (!(f_hz > 0.0)) throw std::invalid_argument("frequency must be > 0 Hz");
  switch (kind_) {
    case Kind::kLine: {
      // theta = beta * l = 2 pi f l / vp, with l in mm and vp in m/s
      const double theta = 2.0 * std::numbers::pi * f_hz * (p1_ * 1e-3) / p2_;
      return abcd_uniform_line(p0_, theta);
    }
    case Kind::kShuntRlc: {
      const double w = 2.0 * std::numbers::pi * f_hz;
      Complex z_branch(p0_, w * p1_ - 1.0 / (w * p2_));
      // A lossless branch crosses exactly zero at resonance; clamp so the
      // admittance stays finite and S11 tends to -1 as physics dictates.
      if (std::abs(z_branch) < 1e-12) z_branch = Complex(1e-12, 0.0);
      return abcd_shunt_admittance(1.0 / z_branch);
    }
    case Kind::kCascade: {
      AbcdMatrix acc = children_.front().abcd_at(f_hz);
      for (size_t i = 1; i < children_.size(); ++i) acc = acc * children_[i].abcd_at(f_hz);
      return acc;
    }
  }
  throw std::logic_error("unreachable element kind");
}

double vswr_from_gamma_mag(double gamma_mag) {
  if (gamma_mag > 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
  return (1.0 + gamma_mag) / (1.0 - gamma_mag);
}

Eigen::ArrayXd S11Trace::magnitude_db() const {
  // Clamped at -300 dB so an exactly matched point stays finite.
  return 20.0 * gamma.abs().max(1e-15).log10();
}

Eigen::ArrayXd S11Trace::vswr() const {
  Eigen::ArrayXd out(gamma.size());
  for (Eigen::Index i = 0; i < gamma.size(); ++i) out[i] = vswr_from_gamma_mag(std::abs(gamma[i]));
  return out;
}

Eigen::ArrayXd linear_grid_hz(double lo_hz, double hi_hz, double step_hz) {
  if (!(lo_hz > 0.0 && hi_hz > lo_hz && step_hz > 0.0))
    throw std::invalid_argument("sweep grid requires 0 < lo < hi and step > 0");
  const auto n = static_cast<Eigen::Index>(std::llround((hi_hz - lo_hz) / step_hz)) + 1;
  Eigen::ArrayXd freqs(n);
  for (Eigen::Index i = 0; i < n; ++i) freqs[i] = lo_hz + static_cast<double>(i) * step_hz;
  return freqs;
}

S11Trace sweep(const NetworkElement& network, double z_ref_ohm, double z_load_ohm,
               const Eigen::ArrayXd& freqs_hz) {
  if (freqs_hz.size() == 0) throw std::invalid_argument("sweep over an empty frequency grid");
  for (Eigen::Index i = 1; i < freqs_hz.size(); ++i)
    if (!(freqs_hz[i] > freqs_hz[i - 1]))
      throw std::invalid_argument("sweep frequencies must be strictly increasing");

  S11Trace trace;
  trace.freq_hz = freqs_hz;
  trace.gamma.resize(freqs_hz.size());
  for (Eigen::Index i = 0; i < freqs_hz.size(); ++i) {
    const Complex g = s11_from_abcd(network.abcd_at(freqs_hz[i]), z_ref_ohm, z_load_ohm);
    if (std::abs(g) > 1.0 + 1e-9)
      throw PassivityError("|S11| = " + std::to_string(std::abs(g)) + " > 1 at " +
                           std::to_string(freqs_hz[i]) + " Hz");
    trace.gamma[i] = g;
  }
  return trace;
}

void write_csv(const S11Trace& trace, std::ostream& os) { os << to_csv(trace); }

std::string to_csv(const S11Trace& trace) {
  std::string out = "freq_hz,s11_re,s11_im,s11_db,vswr\n";
  const Eigen::ArrayXd db = trace.magnitude_db();
  const Eigen::ArrayXd vswr = trace.vswr();
  for (Eigen::Index i = 0; i < trace.size(); ++i) {
    append_num(out, trace.freq_hz[i]);
    out += ',';
    append_num(out, trace.gamma[i].real());
    out += ',';
    append_num(out, trace.gamma[i].imag());
    out += ',';
    append_num(out, db[i]);
    out += ',';
    if (std::isinf(vswr[i]))
      out += "inf";
    else
      append_num(out, vswr[i]);
    out += '\n';
  }
  return out;
}

}  // namespace uwbnotch
