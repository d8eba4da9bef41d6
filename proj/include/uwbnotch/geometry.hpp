// SPDX-License-Identifier: Apache-2.0
//
// Planar antenna layout: parameter set, layout builder, slot-path
// construction and geometric validation. Coordinates are millimetres with
// x across the board width (centred on the feed axis) and y along the board
// length, y = 0 at the feed edge.

#ifndef UWBNOTCH_GEOMETRY_HPP
#define UWBNOTCH_GEOMETRY_HPP

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "uwbnotch/common.hpp"
#include "uwbnotch/notch.hpp"
#include "uwbnotch/substrate.hpp"
#include "uwbnotch/taper.hpp"

namespace uwbnotch {

using Point = Eigen::Vector2d;

struct Rect {
  Point min{0, 0};
  Point max{0, 0};

  double width() const { return max.x() - min.x(); }
  double height() const { return max.y() - min.y(); }
};

struct Circle {
  Point center{0, 0};
  double radius = 0;
};

/// Simple closed polygon, implicitly closed from back() to front().
struct Polygon {
  std::vector<Point> points;
};

/// An etched slot: an orthogonal centerline polyline cut at a uniform width.
struct SlotPath {
  std::vector<Point> centerline;
  double width_mm = 0;
  SlotKind kind = SlotKind::kInvertedCPatch;

  double length_mm() const;
};

enum class ShapeRole {
  kSubstrate,
  kPatch,
  kTaper,
  kFeed,
  kSlot,
  kGround,
  kGroundCut,
  kGeneric,
};

std::string to_string(ShapeRole role);
ShapeRole shape_role_from_string(const std::string& s);

struct Shape {
  ShapeRole role = ShapeRole::kGeneric;
  std::variant<Rect, Circle, Polygon, SlotPath> geom;
};

/// Full planar layout: copper and cutouts on both faces, in millimetres.
struct AntennaGeometry {
  std::vector<Shape> front;
  std::vector<Shape> back;
};

/// Complete parameter set for one antenna design.
struct DesignParams {
  SubstrateSpec substrate = fr4_substrate();

  double substrate_length_mm = 32.0;
  double substrate_width_mm = 22.0;
  double patch_radius_mm = 6.553;
  double feed_length_mm = 5.42;
  double feed_width_mm = 3.13;
  TaperSpec taper;
  double taper_tip_min_width_mm = 0.2;  ///< narrowest copper the profile may reach
  double ground_length_mm = 5.3;
  double ground_width_mm = 22.0;
  double ground_cut_mm = 2.0;  ///< square-cut side at the ground's patch-side edge
  double slot_gap_mm = 0.5;    ///< clearance between nested C-slot cuts

  std::vector<NotchSpec> notches;

  void validate() const;
};

/// The toolkit's reference FR-4 design with its three stock notches.
DesignParams default_design();

/// Physical circular-patch radius for a design frequency from the standard
/// cavity-model formula with fringing correction; monotone decreasing in f.
double circular_patch_radius_mm(const Frequency& f_design, const SubstrateSpec& sub);

/// Constructs an orthogonal three-segment slot centerline (bridge plus two
/// arms). gap_mm is the span of the open side and therefore the bridge
/// length; the arms take (total - gap)/2 each. The path is rotated by
/// orientation_deg about the anchor (the bridge midpoint). With orientation
/// 0 an inverted-C opens toward -y and a U built at 180 opens toward +y.
SlotPath slot_path(SlotKind kind, double total_length_mm, double width_mm, double gap_mm,
                   const Point& anchor, double orientation_deg);

/// Builds both layers from the parameter set and validates the result.
/// Throws GeometryError listing every violated constraint.
AntennaGeometry build_geometry(const DesignParams& params);

/// All violated constraints of a layout; empty means valid.
std::vector<std::string> validate_geometry(const AntennaGeometry& geom);

/// Merged matching-section outline (feed rectangle + taper polygon); the
/// host shape for U slots and the copper rendered on the feed side.
Polygon matching_section_outline(const AntennaGeometry& geom);

/// Outline of the slot cut: the centerline dilated by half the cut width,
/// with square caps and mitred right-angle joins.
Polygon slot_outline(const SlotPath& slot);

bool point_in_polygon(const Point& p, const Polygon& poly);
double distance_to_polygon_boundary(const Point& p, const Polygon& poly);

}  // namespace uwbnotch

#endif  // UWBNOTCH_GEOMETRY_HPP
