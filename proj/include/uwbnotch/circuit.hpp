// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional two-port network engine: ABCD chain matrices, cascading,
// S11 conversion and frequency sweeps. All elements are immutable values.

#ifndef UWBNOTCH_CIRCUIT_HPP
#define UWBNOTCH_CIRCUIT_HPP

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uwbnotch/common.hpp"

namespace uwbnotch {

using Complex = std::complex<double>;

/// 2x2 chain matrix [[A, B], [C, D]]; B in ohms, C in siemens.
/// Lossless reciprocal elements satisfy det = 1.
using AbcdMatrix = Eigen::Matrix2cd;

/// Lossless uniform line of electrical length theta: (cos t, i z0 sin t; i sin t / z0, cos t).
AbcdMatrix abcd_uniform_line(double z0_ohm, double theta_rad);

/// Shunt admittance element: [[1, 0], [Y, 1]].
AbcdMatrix abcd_shunt_admittance(Complex y_siemens);

/// Left-to-right product, source side first. Throws on an empty list.
AbcdMatrix cascade(std::span<const AbcdMatrix> elements);

/// Zin = (A zl + B) / (C zl + D). Throws SingularNetworkError when the
/// denominator magnitude falls below 1e-15.
Complex input_impedance(const AbcdMatrix& m, Complex z_load_ohm);

/// Input reflection (Zin - z_ref) / (Zin + z_ref) of the two-port terminated in z_load.
Complex s11_from_abcd(const AbcdMatrix& m, double z_ref_ohm, double z_load_ohm);

/// A physical network element: a uniform transmission-line section, a shunt
/// series-RLC branch, or an ordered cascade of elements (source side first).
class NetworkElement {
 public:
  static NetworkElement uniform_line(double z0_ohm, double length_mm,
                                     double phase_velocity_mps);
  static NetworkElement shunt_series_rlc(double r_ohm, double l_henry, double c_farad);
  static NetworkElement chain(std::vector<NetworkElement> elements);

  /// Chain matrix of this element at the given frequency.
  AbcdMatrix abcd_at(double f_hz) const;

  bool is_cascade() const { return kind_ == Kind::kCascade; }
  const std::vector<NetworkElement>& elements() const { return children_; }

 private:
  enum class Kind { kLine, kShuntRlc, kCascade };
  NetworkElement(Kind kind, double p0, double p1, double p2)
      : kind_(kind), p0_(p0), p1_(p1), p2_(p2) {}

  Kind kind_;
  double p0_ = 0, p1_ = 0, p2_ = 0;       // line: z0, length, vp;  rlc: r, l, c
  std::vector<NetworkElement> children_;  // cascade only
};

/// Swept input-reflection results over a strictly increasing frequency grid.
struct S11Trace {
  Eigen::ArrayXd freq_hz;
  Eigen::ArrayXcd gamma;

  Eigen::Index size() const { return freq_hz.size(); }
  Eigen::ArrayXd magnitude_db() const;
  Eigen::ArrayXd vswr() const;
};

/// (1 + m) / (1 - m), reported as +infinity when m > 1 - 1e-12.
double vswr_from_gamma_mag(double gamma_mag);

/// Per-frequency ABCD evaluation, cascade and conversion. Enforces the
/// passivity postcondition |gamma| <= 1 + 1e-9 (PassivityError otherwise).
S11Trace sweep(const NetworkElement& network, double z_ref_ohm, double z_load_ohm,
               const Eigen::ArrayXd& freqs_hz);

/// Uniform grid lo..hi inclusive with the given step.
Eigen::ArrayXd linear_grid_hz(double lo_hz, double hi_hz, double step_hz);

/// CSV with header freq_hz,s11_re,s11_im,s11_db,vswr; '.' decimal separator,
/// newline-terminated rows.
void write_csv(const S11Trace& trace, std::ostream& os);
std::string to_csv(const S11Trace& trace);

}  // namespace uwbnotch

#endif  // UWBNOTCH_CIRCUIT_HPP
