// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "uwbnotch/microstrip.hpp"

namespace uwbnotch {

namespace {

constexpr double kClearanceMm = 0.05;  // copper-to-cutout clearance enforced by validation
constexpr int kTaperSamplesPerSide = 65;

double segment_point_distance(const Point& a, const Point& b, const Point& p) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double segment_segment_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
  auto orient = [](const Point& p, const Point& q, const Point& r) {
    return (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
  };
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0.0;  // proper crossing
  return std::min(std::min(segment_point_distance(a, b, c), segment_point_distance(a, b, d)),
                  std::min(segment_point_distance(c, d, a), segment_point_distance(c, d, b)));
}

const Rect* find_rect(const std::vector<Shape>& shapes, ShapeRole role) {
  for (const auto& s : shapes)
    if (s.role == role)
      if (const auto* r = std::get_if<Rect>(&s.geom)) return r;
  return nullptr;
}

const Circle* find_circle(const std::vector<Shape>& shapes, ShapeRole role) {
  for (const auto& s : shapes)
    if (s.role == role)
      if (const auto* c = std::get_if<Circle>(&s.geom)) return c;
  return nullptr;
}

const Polygon* find_polygon(const std::vector<Shape>& shapes, ShapeRole role) {
  for (const auto& s : shapes)
    if (s.role == role)
      if (const auto* p = std::get_if<Polygon>(&s.geom)) return p;
  return nullptr;
}

bool rect_contains(const Rect& outer, const Point& p, double tol = 1e-9) {
  return p.x() >= outer.min.x() - tol && p.x() <= outer.max.x() + tol &&
         p.y() >= outer.min.y() - tol && p.y() <= outer.max.y() + tol;
}

}  // namespace

double SlotPath::length_mm() const {
  double total = 0.0;
  for (size_t i = 1; i < centerline.size(); ++i)
    total += (centerline[i] - centerline[i - 1]).norm();
  return total;
}

std::string to_string(ShapeRole role) {
  switch (role) {
    case ShapeRole::kSubstrate: return "substrate";
    case ShapeRole::kPatch: return "patch";
    case ShapeRole::kTaper: return "taper";
    case ShapeRole::kFeed: return "feed";
    case ShapeRole::kSlot: return "slot";
    case ShapeRole::kGround: return "ground";
    case ShapeRole::kGroundCut: return "ground-cut";
    case ShapeRole::kGeneric: return "generic";
  }
  return "generic";
}

ShapeRole shape_role_from_string(const std::string& s) {
  if (s == "substrate") return ShapeRole::kSubstrate;
  if (s == "patch") return ShapeRole::kPatch;
  if (s == "taper") return ShapeRole::kTaper;
  if (s == "feed") return ShapeRole::kFeed;
  if (s == "slot") return ShapeRole::kSlot;
  if (s == "ground") return ShapeRole::kGround;
  if (s == "ground-cut") return ShapeRole::kGroundCut;
  if (s == "generic") return ShapeRole::kGeneric;
  throw std::invalid_argument("unknown shape role '" + s + "'");
}

void DesignParams::validate() const {
  substrate.validate();
  taper.validate();
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
  };
  positive(substrate_length_mm, "substrate_length_mm");
  positive(substrate_width_mm, "substrate_width_mm");
  positive(patch_radius_mm, "patch_radius_mm");
  positive(feed_length_mm, "feed_length_mm");
  positive(feed_width_mm, "feed_width_mm");
  positive(taper_tip_min_width_mm, "taper_tip_min_width_mm");
  positive(ground_length_mm, "ground_length_mm");
  positive(ground_width_mm, "ground_width_mm");
  if (!(ground_cut_mm >= 0.0)) throw std::invalid_argument("ground_cut_mm must be >= 0");
  if (!(slot_gap_mm >= 0.0)) throw std::invalid_argument("slot_gap_mm must be >= 0");
  if (ground_width_mm > substrate_width_mm + 1e-9)
    throw std::invalid_argument("ground_width_mm exceeds substrate_width_mm");
  if (2.0 * patch_radius_mm > substrate_width_mm + 1e-9)
    throw std::invalid_argument("patch diameter exceeds substrate_width_mm");
  for (const auto& n : notches) n.validate();
}

DesignParams default_design() {
  DesignParams p;
  p.substrate = fr4_substrate();
  p.taper = TaperSpec{50.0, 50.0 * std::exp(2.37), 5.42, 1024};

  const double eps_eff = effective_permittivity_simple(p.substrate.eps_r);
  auto make_notch = [&](const char* band_name, double lo_ghz, double hi_ghz, double target_ghz,
                        SlotKind kind, double cut_w, double q, double bridge, double arm,
                        double ref) {
    NotchSpec n{Frequency::gigahertz(target_ghz),
                ServiceBand(band_name, Frequency::gigahertz(lo_ghz), Frequency::gigahertz(hi_ghz)),
                kind,
                slot_length_for_frequency_mm(Frequency::gigahertz(target_ghz), eps_eff),
                cut_w,
                q};
    n.bridge_ratio = bridge;
    n.arm_ratio = arm;
    n.reference_length_mm = ref;
    return n;
  };
  // Per-notch loaded Q chosen so each protected band is rejected with margin
  // while the notch regions stay distinct: a band as wide as WLAN needs a
  // wider (lower-Q) notch than the X-band downlink does.
  p.notches = {
      make_notch("WiMAX", 3.3, 3.7, 3.5, SlotKind::kInvertedCPatch, 0.3, 18.0, 8.0, 7.0, 26.34),
      make_notch("WLAN", 5.15, 5.825, 5.5, SlotKind::kInvertedCPatch, 0.3, 16.0, 6.0, 4.5, 19.3),
      make_notch("X-band downlink", 7.25, 7.75, 7.5, SlotKind::kUFeedline, 0.2, 25.0, 1.6, 5.8,
                 12.29),
  };
  return p;
}

double circular_patch_radius_mm(const Frequency& f_design, const SubstrateSpec& sub) {
  sub.validate();
  // Cavity-model dominant mode with fringing correction; worked in cm.
  const double h_cm = sub.height_mm / 10.0;
  const double f_term = 8.791e9 / (f_design.hz() * std::sqrt(sub.eps_r));
  const double bracket = std::log(std::numbers::pi * f_term / (2.0 * h_cm)) + 1.7726;
  const double a_cm =
      f_term / std::sqrt(1.0 + 2.0 * h_cm / (std::numbers::pi * sub.eps_r * f_term) * bracket);
  return a_cm * 10.0;
}

SlotPath slot_path(SlotKind kind, double total_length_mm, double width_mm, double gap_mm,
                   const Point& anchor, double orientation_deg) {
  if (!(total_length_mm > 0.0)) throw std::invalid_argument("slot total length must be > 0");
  if (!(width_mm > 0.0)) throw std::invalid_argument("slot cut width must be > 0");
  if (!(gap_mm > 0.0)) throw std::invalid_argument("slot opening gap must be > 0");
  const double arm = (total_length_mm - gap_mm) / 2.0;
  if (!(arm > 0.0))
    throw std::invalid_argument("slot arms would be nonpositive: opening gap " +
                                std::to_string(gap_mm) + " mm >= total length " +
                                std::to_string(total_length_mm) + " mm");

  // Bridge centred on the anchor, arms toward -y before rotation.
  const std::vector<Point> base = {
      {-gap_mm / 2.0, -arm}, {-gap_mm / 2.0, 0.0}, {gap_mm / 2.0, 0.0}, {gap_mm / 2.0, -arm}};

  const double t = orientation_deg * std::numbers::pi / 180.0;
  const double c = std::cos(t), s = std::sin(t);
  SlotPath path;
  path.kind = kind;
  path.width_mm = width_mm;
  path.centerline.reserve(base.size());
  for (const Point& p : base)
    path.centerline.emplace_back(anchor.x() + c * p.x() - s * p.y(),
                                 anchor.y() + s * p.x() + c * p.y());
  return path;
}

Polygon slot_outline(const SlotPath& slot) {
  const auto& pts = slot.centerline;
  if (pts.size() < 2) throw std::invalid_argument("slot centerline needs at least 2 points");
  const double h = slot.width_mm / 2.0;
  const size_t nseg = pts.size() - 1;

  std::vector<Point> dirs(nseg), normals(nseg);
  for (size_t i = 0; i < nseg; ++i) {
    dirs[i] = (pts[i + 1] - pts[i]).normalized();
    normals[i] = Point(dirs[i].y(), -dirs[i].x());
  }

  // Square caps; mitre joins are exact for the +-90 degree turns used here.
  Polygon out;
  out.points.push_back(pts.front() - dirs.front() * h + normals.front() * h);
  for (size_t k = 1; k < nseg; ++k)
    out.points.push_back(pts[k] + (normals[k - 1] + normals[k]) * h);
  out.points.push_back(pts.back() + dirs.back() * h + normals.back() * h);
  out.points.push_back(pts.back() + dirs.back() * h - normals.back() * h);
  for (size_t k = nseg - 1; k >= 1; --k)
    out.points.push_back(pts[k] - (normals[k - 1] + normals[k]) * h);
  out.points.push_back(pts.front() - dirs.front() * h - normals.front() * h);
  return out;
}

bool point_in_polygon(const Point& p, const Polygon& poly) {
  bool inside = false;
  const auto& v = poly.points;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y() > p.y()) != (v[j].y() > p.y())) {
      const double x_cross =
          v[j].x() + (p.y() - v[j].y()) / (v[i].y() - v[j].y()) * (v[i].x() - v[j].x());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

double distance_to_polygon_boundary(const Point& p, const Polygon& poly) {
  double best = std::numeric_limits<double>::infinity();
  const auto& v = poly.points;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    best = std::min(best, segment_point_distance(v[j], v[i], p));
  return best;
}

Polygon matching_section_outline(const AntennaGeometry& geom) {
  const Rect* feed = find_rect(geom.front, ShapeRole::kFeed);
  const Polygon* taper = find_polygon(geom.front, ShapeRole::kTaper);
  if (feed && taper) {
    // The builder emits the taper boundary starting at its source-side right
    // corner and ending at the source-side left corner, so the two shapes
    // stitch into one simple polygon.
    Polygon merged;
    merged.points.push_back(feed->min);
    merged.points.emplace_back(feed->max.x(), feed->min.y());
    merged.points.insert(merged.points.end(), taper->points.begin(), taper->points.end());
    return merged;
  }
  if (taper) return *taper;
  if (feed) {
    Polygon p;
    p.points = {feed->min, {feed->max.x(), feed->min.y()}, feed->max, {feed->min.x(), feed->max.y()}};
    return p;
  }
  return Polygon{};
}

AntennaGeometry build_geometry(const DesignParams& params) {
  params.validate();
  AntennaGeometry geom;

  const double half_w = params.substrate_width_mm / 2.0;
  geom.front.push_back(
      {ShapeRole::kSubstrate, Rect{{-half_w, 0.0}, {half_w, params.substrate_length_mm}}});
  geom.front.push_back({ShapeRole::kFeed, Rect{{-params.feed_width_mm / 2.0, 0.0},
                                               {params.feed_width_mm / 2.0, params.feed_length_mm}}});

  // Taper polygon: width profile from inverting the impedance profile. The
  // profile is anchored at the feed's actual impedance so the copper is
  // continuous at the junction, and clamped at the configured minimum tip
  // width; impedances above that are not microstrip-realizable on this board.
  const double z_source = microstrip_impedance(params.feed_width_mm, params.substrate);
  const double z_tip_cap = microstrip_impedance(params.taper_tip_min_width_mm, params.substrate);
  const ImpedanceRange range = microstrip_impedance_range(params.substrate);
  const double z_end = std::clamp(params.taper.zl_ohm, range.min_ohm * (1.0 + 1e-9), z_tip_cap);
  const double a_geom = std::log(z_end / z_source) / params.taper.length_mm;

  std::vector<double> half_widths(kTaperSamplesPerSide);
  for (int i = 0; i < kTaperSamplesPerSide; ++i) {
    const double z = params.taper.length_mm * i / (kTaperSamplesPerSide - 1);
    const double impedance = z_source * std::exp(a_geom * z);
    half_widths[i] = microstrip_width_for_impedance(impedance, params.substrate) / 2.0;
  }
  Polygon taper_poly;
  taper_poly.points.reserve(2 * kTaperSamplesPerSide);
  const double y_base = params.feed_length_mm;
  for (int i = 0; i < kTaperSamplesPerSide; ++i)
    taper_poly.points.emplace_back(
        half_widths[i], y_base + params.taper.length_mm * i / (kTaperSamplesPerSide - 1));
  for (int i = kTaperSamplesPerSide - 1; i >= 0; --i)
    taper_poly.points.emplace_back(
        -half_widths[i], y_base + params.taper.length_mm * i / (kTaperSamplesPerSide - 1));
  geom.front.push_back({ShapeRole::kTaper, std::move(taper_poly)});

  const double patch_cy = params.feed_length_mm + params.taper.length_mm + params.patch_radius_mm;
  geom.front.push_back({ShapeRole::kPatch, Circle{{0.0, patch_cy}, params.patch_radius_mm}});

  // C slots nest concentrically on the patch, bridges toward the patch top,
  // each next cut slot_gap_mm below the previous bridge. The U slot sits on
  // the matching section, opening toward the patch.
  std::optional<double> prev_bridge_y;
  std::optional<double> prev_width;
  for (const NotchSpec& n : params.notches) {
    const double bridge = n.slot_length_mm * n.bridge_ratio / (n.bridge_ratio + 2.0 * n.arm_ratio);
    const double arm = (n.slot_length_mm - bridge) / 2.0;
    if (n.slot_kind == SlotKind::kInvertedCPatch) {
      double bridge_y;
      if (!prev_bridge_y) {
        bridge_y = patch_cy + arm / 2.0;
      } else {
        bridge_y = *prev_bridge_y - (*prev_width / 2.0 + n.slot_width_mm / 2.0 + params.slot_gap_mm);
      }
      geom.front.push_back({ShapeRole::kSlot, slot_path(n.slot_kind, n.slot_length_mm,
                                                        n.slot_width_mm, bridge, {0.0, bridge_y},
                                                        0.0)});
      prev_bridge_y = bridge_y;
      prev_width = n.slot_width_mm;
    } else {
      const double bridge_y = 0.2 + n.slot_width_mm / 2.0;
      geom.front.push_back({ShapeRole::kSlot, slot_path(n.slot_kind, n.slot_length_mm,
                                                        n.slot_width_mm, bridge, {0.0, bridge_y},
                                                        180.0)});
    }
  }

  const double half_g = params.ground_width_mm / 2.0;
  geom.back.push_back({ShapeRole::kGround, Rect{{-half_g, 0.0}, {half_g, params.ground_length_mm}}});
  if (params.ground_cut_mm > 0.0) {
    const double half_c = params.ground_cut_mm / 2.0;
    geom.back.push_back({ShapeRole::kGroundCut,
                         Rect{{-half_c, params.ground_length_mm - params.ground_cut_mm},
                              {half_c, params.ground_length_mm}}});
  }

  if (auto violations = validate_geometry(geom); !violations.empty())
    throw GeometryError(std::move(violations));
  return geom;
}

std::vector<std::string> validate_geometry(const AntennaGeometry& geom) {
  std::vector<std::string> violations;
  auto complain = [&](std::string msg) { violations.push_back(std::move(msg)); };

  const Rect* substrate = find_rect(geom.front, ShapeRole::kSubstrate);
  const Rect* feed = find_rect(geom.front, ShapeRole::kFeed);
  const Circle* patch = find_circle(geom.front, ShapeRole::kPatch);
  const Polygon* taper = find_polygon(geom.front, ShapeRole::kTaper);
  const Rect* ground = find_rect(geom.back, ShapeRole::kGround);
  const Rect* ground_cut = find_rect(geom.back, ShapeRole::kGroundCut);

  if (substrate && (substrate->width() <= 0.0 || substrate->height() <= 0.0))
    complain("substrate rectangle has nonpositive extent");

  if (substrate && patch) {
    const Rect& s = *substrate;
    if (patch->center.x() - patch->radius < s.min.x() - 1e-9 ||
        patch->center.x() + patch->radius > s.max.x() + 1e-9 ||
        patch->center.y() - patch->radius < s.min.y() - 1e-9 ||
        patch->center.y() + patch->radius > s.max.y() + 1e-9)
      complain("patch outside substrate");
  }
  if (substrate && feed &&
      !(rect_contains(*substrate, feed->min) && rect_contains(*substrate, feed->max)))
    complain("feed outside substrate");
  if (substrate && taper) {
    for (const Point& p : taper->points)
      if (!rect_contains(*substrate, p)) {
        complain("taper polygon outside substrate");
        break;
      }
  }
  if (substrate && ground) {
    if (ground->width() > substrate->width() + 1e-9) complain("ground wider than substrate");
    if (ground->height() > substrate->height() + 1e-9) complain("ground longer than substrate");
  }
  if (ground && ground_cut &&
      !(rect_contains(*ground, ground_cut->min) && rect_contains(*ground, ground_cut->max)))
    complain("ground cut outside ground");

  // Taper/feed copper continuity at the junction.
  if (feed && taper && !taper->points.empty()) {
    const double y_junction = feed->max.y();
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -std::numeric_limits<double>::infinity();
    for (const Point& p : taper->points)
      if (std::abs(p.y() - y_junction) < 1e-6) {
        x_min = std::min(x_min, p.x());
        x_max = std::max(x_max, p.x());
      }
    if (std::isinf(x_min)) {
      complain("taper polygon does not reach the feed junction");
    } else if (std::abs((x_max - x_min) - feed->width()) > 0.01) {
      complain("taper/feed width mismatch exceeds 0.01 mm (taper " + std::to_string(x_max - x_min) +
               " mm vs feed " + std::to_string(feed->width()) + " mm)");
    }
  }

  // Slots: host containment, mutual clearance and self-intersection.
  std::vector<const SlotPath*> c_slots, u_slots;
  for (const auto& s : geom.front)
    if (const auto* slot = std::get_if<SlotPath>(&s.geom)) {
      (slot->kind == SlotKind::kInvertedCPatch ? c_slots : u_slots).push_back(slot);
    }

  auto check_self_intersection = [&](const SlotPath& slot, const std::string& label) {
    const auto& v = slot.centerline;
    for (size_t i = 0; i + 1 < v.size(); ++i)
      for (size_t j = i + 2; j + 1 < v.size(); ++j)
        if (segment_segment_distance(v[i], v[i + 1], v[j], v[j + 1]) < 1e-12) {
          complain(label + " centerline self-intersects");
          return;
        }
  };
  auto check_segment_lengths = [&](const SlotPath& slot, const std::string& label) {
    for (size_t i = 0; i + 1 < slot.centerline.size(); ++i)
      if ((slot.centerline[i + 1] - slot.centerline[i]).norm() < slot.width_mm)
        complain(label + " has a segment shorter than its cut width");
  };

  int index = 0;
  for (const SlotPath* slot : c_slots) {
    const std::string label = "C slot " + std::to_string(index++);
    check_self_intersection(*slot, label);
    check_segment_lengths(*slot, label);
    if (patch) {
      for (const Point& p : slot->centerline) {
        const double reach = (p - patch->center).norm() + slot->width_mm / 2.0 + kClearanceMm;
        if (reach > patch->radius) {
          complain("slot outside patch: " + label + " reaches " + std::to_string(reach) +
                   " mm from the patch centre (radius " + std::to_string(patch->radius) + " mm)");
          break;
        }
      }
    } else if (!geom.front.empty() && (substrate || feed || taper)) {
      complain("slot outside patch: " + label + " has no patch to host it");
    }
  }

  const Polygon host = matching_section_outline(geom);
  index = 0;
  for (const SlotPath* slot : u_slots) {
    const std::string label = "U slot " + std::to_string(index++);
    check_self_intersection(*slot, label);
    check_segment_lengths(*slot, label);
    if (host.points.empty()) {
      complain("slot outside matching section: " + label + " has no feed/taper to host it");
      continue;
    }
    const double need = slot->width_mm / 2.0 + kClearanceMm;
    bool ok = true;
    for (size_t i = 0; i + 1 < slot->centerline.size() && ok; ++i) {
      const Point a = slot->centerline[i];
      const Point b = slot->centerline[i + 1];
      const int steps = std::max(2, static_cast<int>(std::ceil((b - a).norm() / 0.1)));
      for (int k = 0; k <= steps; ++k) {
        const Point p = a + (b - a) * (static_cast<double>(k) / steps);
        if (!point_in_polygon(p, host) || distance_to_polygon_boundary(p, host) < need) {
          complain("slot outside matching section: " + label + " at (" + std::to_string(p.x()) +
                   ", " + std::to_string(p.y()) + ") mm");
          ok = false;
          break;
        }
      }
    }
  }

  // Pairwise clearance between slot cuts on the same face.
  std::vector<const SlotPath*> all_slots = c_slots;
  all_slots.insert(all_slots.end(), u_slots.begin(), u_slots.end());
  for (size_t i = 0; i < all_slots.size(); ++i)
    for (size_t j = i + 1; j < all_slots.size(); ++j) {
      const auto& s1 = *all_slots[i];
      const auto& s2 = *all_slots[j];
      const double need = (s1.width_mm + s2.width_mm) / 2.0 + kClearanceMm;
      double dist = std::numeric_limits<double>::infinity();
      for (size_t a = 0; a + 1 < s1.centerline.size(); ++a)
        for (size_t b = 0; b + 1 < s2.centerline.size(); ++b)
          dist = std::min(dist, segment_segment_distance(s1.centerline[a], s1.centerline[a + 1],
                                                         s2.centerline[b], s2.centerline[b + 1]));
      if (dist < need)
        complain("slots overlap: cuts " + std::to_string(i) + " and " + std::to_string(j) +
                 " are " + std::to_string(dist) + " mm apart, need " + std::to_string(need));
    }

  return violations;
}

}  // namespace uwbnotch
