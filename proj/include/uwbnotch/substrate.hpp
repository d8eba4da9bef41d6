// SPDX-License-Identifier: Apache-2.0
#ifndef UWBNOTCH_SUBSTRATE_HPP
#define UWBNOTCH_SUBSTRATE_HPP

#include <stdexcept>

namespace uwbnotch {

/// Dielectric board description.
struct SubstrateSpec {
  double eps_r = 4.4;                 ///< relative permittivity, >= 1
  double height_mm = 1.6;             ///< dielectric thickness
  double metal_thickness_mm = 0.0036; ///< conductor thickness
  double loss_tangent = 0.0;          ///< stored; the lossless models ignore it

  void validate() const {
    if (!(eps_r >= 1.0)) throw std::invalid_argument("substrate eps_r must be >= 1");
    if (!(height_mm > 0.0)) throw std::invalid_argument("substrate height_mm must be > 0");
    if (!(metal_thickness_mm >= 0.0))
      throw std::invalid_argument("substrate metal_thickness_mm must be >= 0");
    if (!(loss_tangent >= 0.0)) throw std::invalid_argument("substrate loss_tangent must be >= 0");
  }
};

/// 1.6 mm FR-4, the toolkit's reference board.
inline SubstrateSpec fr4_substrate() { return SubstrateSpec{4.4, 1.6, 0.0036, 0.0}; }

}  // namespace uwbnotch

#endif  // UWBNOTCH_SUBSTRATE_HPP
