// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/svg.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <variant>

namespace uwbnotch {

namespace {

constexpr const char* kCopper = "#b87333";
constexpr const char* kBoard = "#efe7cf";
constexpr const char* kBackCopper = "#8f9aa3";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

struct Frame {
  double min_x = 0, max_y = 0;  // board coords -> svg: (x - min_x, max_y - y)
  double width = 0, height = 0;

  std::string pt(const Point& p) const { return fmt(p.x() - min_x) + " " + fmt(max_y - p.y()); }
};

std::string rect_subpath(const Rect& r, const Frame& f) {
  return "M " + f.pt(r.min) + " L " + f.pt({r.max.x(), r.min.y()}) + " L " + f.pt(r.max) + " L " +
         f.pt({r.min.x(), r.max.y()}) + " Z";
}

std::string circle_subpath(const Circle& c, const Frame& f) {
  const Point west{c.center.x() - c.radius, c.center.y()};
  const Point east{c.center.x() + c.radius, c.center.y()};
  const std::string r = fmt(c.radius);
  return "M " + f.pt(west) + " A " + r + " " + r + " 0 1 0 " + f.pt(east) + " A " + r + " " + r +
         " 0 1 0 " + f.pt(west) + " Z";
}

std::string polygon_subpath(const Polygon& poly, const Frame& f) {
  std::string d;
  for (size_t i = 0; i < poly.points.size(); ++i)
    d += (i == 0 ? "M " : " L ") + f.pt(poly.points[i]);
  d += " Z";
  return d;
}

void emit_path(std::string& out, const std::string& d, const char* fill, bool evenodd) {
  out += "<path d=\"" + d + "\" fill=\"";
  out += fill;
  out += evenodd ? "\" fill-rule=\"evenodd\"/>\n" : "\"/>\n";
}

}  // namespace

std::string export_svg(const AntennaGeometry& geom) {
  // Frame from the substrate when present, otherwise from the shape bounds.
  Frame frame;
  const Rect* substrate = nullptr;
  for (const auto& s : geom.front)
    if (s.role == ShapeRole::kSubstrate)
      if (const auto* r = std::get_if<Rect>(&s.geom)) substrate = r;
  if (substrate) {
    frame.min_x = substrate->min.x();
    frame.max_y = substrate->max.y();
    frame.width = substrate->width();
    frame.height = substrate->height();
  } else {
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    auto grow = [&](const Point& p) {
      min_x = std::min(min_x, p.x());
      min_y = std::min(min_y, p.y());
      max_x = std::max(max_x, p.x());
      max_y = std::max(max_y, p.y());
    };
    auto grow_shape = [&](const Shape& s) {
      if (const auto* r = std::get_if<Rect>(&s.geom)) {
        grow(r->min);
        grow(r->max);
      } else if (const auto* c = std::get_if<Circle>(&s.geom)) {
        grow({c->center.x() - c->radius, c->center.y() - c->radius});
        grow({c->center.x() + c->radius, c->center.y() + c->radius});
      } else if (const auto* p = std::get_if<Polygon>(&s.geom)) {
        for (const auto& q : p->points) grow(q);
      } else if (const auto* sl = std::get_if<SlotPath>(&s.geom)) {
        for (const auto& q : sl->centerline) grow(q);
      }
    };
    for (const auto& s : geom.front) grow_shape(s);
    for (const auto& s : geom.back) grow_shape(s);
    if (!std::isfinite(min_x)) min_x = min_y = max_x = max_y = 0.0;
    frame.min_x = min_x;
    frame.max_y = max_y;
    frame.width = max_x - min_x;
    frame.height = max_y - min_y;
  }

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(frame.width) +
         "mm\" height=\"" + fmt(frame.height) + "mm\" viewBox=\"0 0 " + fmt(frame.width) + " " +
         fmt(frame.height) + "\">\n";

  // Front: board outline, then the matching-section copper with U cutouts,
  // then the patch with C cutouts. Shapes with no recognized host render
  // standalone.
  svg += "<g id=\"front\">\n";
  if (substrate) emit_path(svg, rect_subpath(*substrate, frame), kBoard, false);

  const Polygon matching = matching_section_outline(geom);
  std::string matching_d;
  if (!matching.points.empty()) matching_d = polygon_subpath(matching, frame);
  std::string patch_d;
  const Circle* patch = nullptr;
  for (const auto& s : geom.front)
    if (s.role == ShapeRole::kPatch)
      if (const auto* c = std::get_if<Circle>(&s.geom)) patch = c;
  if (patch) patch_d = circle_subpath(*patch, frame);

  std::string extras;
  for (const auto& s : geom.front) {
    if (const auto* slot = std::get_if<SlotPath>(&s.geom)) {
      const std::string d = polygon_subpath(slot_outline(*slot), frame);
      if (slot->kind == SlotKind::kInvertedCPatch && patch)
        patch_d += " " + d;
      else if (slot->kind == SlotKind::kUFeedline && !matching_d.empty())
        matching_d += " " + d;
      else
        extras += "<path d=\"" + d + "\" fill=\"" + kBoard + "\"/>\n";
    } else if (s.role == ShapeRole::kGeneric) {
      if (const auto* r = std::get_if<Rect>(&s.geom))
        emit_path(svg, rect_subpath(*r, frame), kCopper, false);
      else if (const auto* c = std::get_if<Circle>(&s.geom))
        emit_path(svg, circle_subpath(*c, frame), kCopper, false);
      else if (const auto* p = std::get_if<Polygon>(&s.geom))
        emit_path(svg, polygon_subpath(*p, frame), kCopper, false);
    }
  }
  if (!matching_d.empty()) emit_path(svg, matching_d, kCopper, true);
  if (!patch_d.empty()) emit_path(svg, patch_d, kCopper, true);
  svg += extras;
  svg += "</g>\n";

  svg += "<g id=\"back\">\n";
  std::string ground_d;
  for (const auto& s : geom.back) {
    if (s.role == ShapeRole::kGround) {
      if (const auto* r = std::get_if<Rect>(&s.geom)) ground_d = rect_subpath(*r, frame) + ground_d;
    } else if (s.role == ShapeRole::kGroundCut) {
      if (const auto* r = std::get_if<Rect>(&s.geom)) ground_d += " " + rect_subpath(*r, frame);
    } else if (const auto* r = std::get_if<Rect>(&s.geom)) {
      emit_path(svg, rect_subpath(*r, frame), kBackCopper, false);
    } else if (const auto* p = std::get_if<Polygon>(&s.geom)) {
      emit_path(svg, polygon_subpath(*p, frame), kBackCopper, false);
    } else if (const auto* c = std::get_if<Circle>(&s.geom)) {
      emit_path(svg, circle_subpath(*c, frame), kBackCopper, false);
    }
  }
  if (!ground_d.empty()) emit_path(svg, ground_d, kBackCopper, true);
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace uwbnotch
