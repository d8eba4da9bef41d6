// SPDX-License-Identifier: Apache-2.0
#ifndef UWBNOTCH_SVG_HPP
#define UWBNOTCH_SVG_HPP

#include <string>

#include "uwbnotch/geometry.hpp"

namespace uwbnotch {

/// Renders the layout as SVG: 1 user unit = 1 mm, named groups `front` and
/// `back`, slot and ground cutouts as even-odd fill subpaths. The viewBox
/// equals the substrate dimensions when a substrate outline is present.
std::string export_svg(const AntennaGeometry& geom);

}  // namespace uwbnotch

#endif  // UWBNOTCH_SVG_HPP
