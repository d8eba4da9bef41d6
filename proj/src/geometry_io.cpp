// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/geometry_io.hpp"

#include <cmath>
#include <variant>

namespace uwbnotch {

using nlohmann::json;

namespace {

json point_to_json(const Point& p) { return json::array({p.x(), p.y()}); }

json shape_to_json(const Shape& s) {
  json j;
  j["role"] = to_string(s.role);
  if (const auto* r = std::get_if<Rect>(&s.geom)) {
    j["type"] = "rect";
    j["min"] = point_to_json(r->min);
    j["max"] = point_to_json(r->max);
  } else if (const auto* c = std::get_if<Circle>(&s.geom)) {
    j["type"] = "circle";
    j["center"] = point_to_json(c->center);
    j["radius"] = c->radius;
  } else if (const auto* p = std::get_if<Polygon>(&s.geom)) {
    j["type"] = "polygon";
    json pts = json::array();
    for (const auto& q : p->points) pts.push_back(point_to_json(q));
    j["points"] = std::move(pts);
  } else if (const auto* slot = std::get_if<SlotPath>(&s.geom)) {
    j["type"] = "slot";
    j["kind"] = to_string(slot->kind);
    j["width_mm"] = slot->width_mm;
    json pts = json::array();
    for (const auto& q : slot->centerline) pts.push_back(point_to_json(q));
    j["centerline"] = std::move(pts);
  }
  return j;
}

double require_finite_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "must be finite");
  return v;
}

Point parse_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, y]");
  return {require_finite_number(j[0], path + "/0"), require_finite_number(j[1], path + "/1")};
}

std::vector<Point> parse_points(const json& j, const std::string& path, size_t min_count) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of points");
  if (j.size() < min_count)
    throw SchemaError(path, "expected at least " + std::to_string(min_count) + " points");
  std::vector<Point> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_point(j[i], path + "/" + std::to_string(i)));
  return out;
}

const json& require_field(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing required field");
  return *it;
}

Shape parse_shape(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a shape object");
  Shape shape;
  if (auto it = j.find("role"); it != j.end()) {
    if (!it->is_string()) throw SchemaError(path + "/role", "expected a string");
    try {
      shape.role = shape_role_from_string(it->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(path + "/role", e.what());
    }
  }
  const json& type = require_field(j, "type", path);
  if (!type.is_string()) throw SchemaError(path + "/type", "expected a string");
  const std::string t = type.get<std::string>();

  if (t == "rect") {
    Rect r;
    r.min = parse_point(require_field(j, "min", path), path + "/min");
    r.max = parse_point(require_field(j, "max", path), path + "/max");
    if (!(r.max.x() > r.min.x() && r.max.y() > r.min.y()))
      throw SchemaError(path, "rect max must exceed min in both axes");
    shape.geom = r;
  } else if (t == "circle") {
    Circle c;
    c.center = parse_point(require_field(j, "center", path), path + "/center");
    c.radius = require_finite_number(require_field(j, "radius", path), path + "/radius");
    if (!(c.radius > 0.0)) throw SchemaError(path + "/radius", "must be positive");
    shape.geom = c;
  } else if (t == "polygon") {
    Polygon p;
    p.points = parse_points(require_field(j, "points", path), path + "/points", 3);
    shape.geom = p;
  } else if (t == "slot") {
    SlotPath slot;
    const json& kind = require_field(j, "kind", path);
    if (!kind.is_string()) throw SchemaError(path + "/kind", "expected a string");
    try {
      slot.kind = slot_kind_from_string(kind.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(path + "/kind", e.what());
    }
    slot.width_mm = require_finite_number(require_field(j, "width_mm", path), path + "/width_mm");
    if (!(slot.width_mm > 0.0)) throw SchemaError(path + "/width_mm", "must be positive");
    slot.centerline = parse_points(require_field(j, "centerline", path), path + "/centerline", 2);
    if (!(slot.length_mm() > 0.0)) throw SchemaError(path + "/centerline", "has zero length");
    shape.geom = slot;
  } else {
    throw SchemaError(path + "/type", "unknown shape type '" + t + "'");
  }
  return shape;
}

std::vector<Shape> parse_layer(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of shapes");
  std::vector<Shape> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_shape(j[i], path + "/" + std::to_string(i)));
  return out;
}

bool points_equal(const Point& a, const Point& b, double tol) {
  return std::abs(a.x() - b.x()) <= tol && std::abs(a.y() - b.y()) <= tol;
}

bool shapes_equal(const Shape& a, const Shape& b, double tol) {
  if (a.role != b.role || a.geom.index() != b.geom.index()) return false;
  if (const auto* ra = std::get_if<Rect>(&a.geom)) {
    const auto& rb = std::get<Rect>(b.geom);
    return points_equal(ra->min, rb.min, tol) && points_equal(ra->max, rb.max, tol);
  }
  if (const auto* ca = std::get_if<Circle>(&a.geom)) {
    const auto& cb = std::get<Circle>(b.geom);
    return points_equal(ca->center, cb.center, tol) && std::abs(ca->radius - cb.radius) <= tol;
  }
  if (const auto* pa = std::get_if<Polygon>(&a.geom)) {
    const auto& pb = std::get<Polygon>(b.geom);
    if (pa->points.size() != pb.points.size()) return false;
    for (size_t i = 0; i < pa->points.size(); ++i)
      if (!points_equal(pa->points[i], pb.points[i], tol)) return false;
    return true;
  }
  const auto& sa = std::get<SlotPath>(a.geom);
  const auto& sb = std::get<SlotPath>(b.geom);
  if (sa.kind != sb.kind || std::abs(sa.width_mm - sb.width_mm) > tol) return false;
  if (sa.centerline.size() != sb.centerline.size()) return false;
  for (size_t i = 0; i < sa.centerline.size(); ++i)
    if (!points_equal(sa.centerline[i], sb.centerline[i], tol)) return false;
  return true;
}

}  // namespace

json export_json(const AntennaGeometry& geom) {
  json j;
  j["schema_version"] = 1;
  j["units"] = "mm";
  json front = json::array();
  for (const auto& s : geom.front) front.push_back(shape_to_json(s));
  json back = json::array();
  for (const auto& s : geom.back) back.push_back(shape_to_json(s));
  j["front"] = std::move(front);
  j["back"] = std::move(back);
  return j;
}

std::string export_json_text(const AntennaGeometry& geom) { return export_json(geom).dump(2) + "\n"; }

AntennaGeometry import_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");
  const json& version = require_field(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != 1)
    throw SchemaError("/schema_version", "unsupported schema version");
  if (auto it = doc.find("units"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != "mm")
      throw SchemaError("/units", "only 'mm' is supported");
  }
  AntennaGeometry geom;
  geom.front = parse_layer(require_field(doc, "front", ""), "/front");
  geom.back = parse_layer(require_field(doc, "back", ""), "/back");
  return geom;
}

AntennaGeometry import_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("(document)", e.what());
  }
  return import_json(doc);
}

bool geometry_equal(const AntennaGeometry& a, const AntennaGeometry& b, double tol_mm) {
  if (a.front.size() != b.front.size() || a.back.size() != b.back.size()) return false;
  for (size_t i = 0; i < a.front.size(); ++i)
    if (!shapes_equal(a.front[i], b.front[i], tol_mm)) return false;
  for (size_t i = 0; i < a.back.size(); ++i)
    if (!shapes_equal(a.back[i], b.back[i], tol_mm)) return false;
  return true;
}

}  // namespace uwbnotch
