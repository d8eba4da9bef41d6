// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "uwbnotch/geometry.hpp"
#include "uwbnotch/geometry_io.hpp"
#include "uwbnotch/svg.hpp"

using namespace uwbnotch;

namespace {

// Minimal well-formedness check: prolog, balanced tags, quoted attributes.
bool xml_well_formed(const std::string& text) {
  size_t pos = 0;
  std::vector<std::string> stack;
  if (text.rfind("<?xml", 0) == 0) {
    pos = text.find("?>");
    if (pos == std::string::npos) return false;
    pos += 2;
  }
  while (pos < text.size()) {
    const size_t lt = text.find('<', pos);
    if (lt == std::string::npos) break;
    const size_t gt = text.find('>', lt);
    if (gt == std::string::npos) return false;
    std::string tag = text.substr(lt + 1, gt - lt - 1);
    // Quotes must pair up inside the tag.
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (!tag.empty() && tag.front() == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
    } else if (!tag.empty() && tag.back() != '/') {
      const std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
      stack.push_back(name);
    }
    pos = gt + 1;
  }
  return stack.empty();
}

int count_slots(const AntennaGeometry& geom) {
  int n = 0;
  for (const auto& s : geom.front)
    if (std::holds_alternative<SlotPath>(s.geom)) ++n;
  return n;
}

}  // namespace

TEST_CASE("circular patch synthesis") {
  const SubstrateSpec fr4 = fr4_substrate();

  SUBCASE("monotone decreasing in frequency") {
    double prev = circular_patch_radius_mm(Frequency::gigahertz(1.0), fr4);
    for (double f = 2.0; f <= 12.0; f += 1.0) {
      const double r = circular_patch_radius_mm(Frequency::gigahertz(f), fr4);
      CHECK(r < prev);
      prev = r;
    }
  }

  SUBCASE("denser dielectric shrinks the patch") {
    SubstrateSpec dense = fr4;
    dense.eps_r = 8.8;
    CHECK(circular_patch_radius_mm(Frequency::gigahertz(5.0), dense) <
          circular_patch_radius_mm(Frequency::gigahertz(5.0), fr4));
  }

  SUBCASE("hand-evaluated value") {
    // Worked by hand for 6.05 GHz on 1.6 mm FR-4: 6.536 mm.
    CHECK(std::abs(circular_patch_radius_mm(Frequency::gigahertz(6.05), fr4) - 6.536) < 0.005);
  }
}

TEST_CASE("slot path construction") {
  SUBCASE("centerline length equals the request") {
    for (double total : {26.0640, 16.5862, 12.1632}) {
      const SlotPath p =
          slot_path(SlotKind::kInvertedCPatch, total, 0.3, total / 3.0, {0.0, 0.0}, 0.0);
      CHECK(std::abs(p.length_mm() - total) < 1e-6);
    }
  }

  SUBCASE("bridge and arm split") {
    const SlotPath p = slot_path(SlotKind::kInvertedCPatch, 22.0, 0.3, 8.0, {1.0, 2.0}, 0.0);
    REQUIRE(p.centerline.size() == 4);
    CHECK((p.centerline[1] - p.centerline[0]).norm() == doctest::Approx(7.0));
    CHECK((p.centerline[2] - p.centerline[1]).norm() == doctest::Approx(8.0));
    CHECK((p.centerline[3] - p.centerline[2]).norm() == doctest::Approx(7.0));
    CHECK(std::abs(p.length_mm() - 22.0) < 1e-9);
    // Opening faces -y: arm ends sit below the bridge.
    CHECK(p.centerline[0].y() < p.centerline[1].y());
  }

  SUBCASE("180 degree rotation mirrors the point set through the anchor") {
    const Point anchor{3.0, -1.0};
    const SlotPath a = slot_path(SlotKind::kUFeedline, 12.0, 0.2, 2.0, anchor, 0.0);
    const SlotPath b = slot_path(SlotKind::kUFeedline, 12.0, 0.2, 2.0, anchor, 180.0);
    REQUIRE(a.centerline.size() == b.centerline.size());
    for (size_t i = 0; i < a.centerline.size(); ++i)
      CHECK((b.centerline[i] - (2.0 * anchor - a.centerline[i])).norm() < 1e-12);
  }

  SUBCASE("degenerate arms rejected") {
    CHECK_THROWS_WITH_AS(slot_path(SlotKind::kInvertedCPatch, 10.0, 0.3, 10.0, {0, 0}, 0.0),
                         doctest::Contains("arms would be nonpositive"), std::invalid_argument);
    CHECK_THROWS_AS(slot_path(SlotKind::kInvertedCPatch, 10.0, 0.3, 0.0, {0, 0}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(slot_path(SlotKind::kInvertedCPatch, 0.0, 0.3, 1.0, {0, 0}, 0.0),
                    std::invalid_argument);
  }

  SUBCASE("outline dilates the centerline") {
    const SlotPath p = slot_path(SlotKind::kInvertedCPatch, 22.0, 0.4, 8.0, {0.0, 0.0}, 0.0);
    const Polygon outline = slot_outline(p);
    CHECK(outline.points.size() == 8);
    for (const Point& q : p.centerline)
      CHECK(distance_to_polygon_boundary(q, outline) == doctest::Approx(0.2).epsilon(1e-9));
  }
}

TEST_CASE("reference design geometry") {
  const DesignParams params = default_design();

  SUBCASE("builds and validates") {
    const AntennaGeometry geom = build_geometry(params);
    CHECK(validate_geometry(geom).empty());
    CHECK(geom.front.size() == 7);  // substrate, feed, taper, patch, 3 slots
    CHECK(geom.back.size() == 2);   // ground, cut
    CHECK(count_slots(geom) == 3);
  }

  SUBCASE("slot centerlines carry the design lengths") {
    const AntennaGeometry geom = build_geometry(params);
    std::multiset<double> expected, actual;
    for (const auto& n : params.notches) expected.insert(std::round(n.slot_length_mm * 1e6));
    for (const auto& s : geom.front)
      if (const auto* slot = std::get_if<SlotPath>(&s.geom))
        actual.insert(std::round(slot->length_mm() * 1e6));
    CHECK(expected == actual);
  }

  SUBCASE("taper polygon is dense and continuous with the feed") {
    const AntennaGeometry geom = build_geometry(params);
    const Polygon* taper = nullptr;
    for (const auto& s : geom.front)
      if (s.role == ShapeRole::kTaper) taper = &std::get<Polygon>(s.geom);
    REQUIRE(taper != nullptr);
    CHECK(taper->points.size() >= 128);  // >= 64 samples per side
    double base_min = 1e9, base_max = -1e9;
    for (const Point& p : taper->points)
      if (std::abs(p.y() - params.feed_length_mm) < 1e-9) {
        base_min = std::min(base_min, p.x());
        base_max = std::max(base_max, p.x());
      }
    CHECK(std::abs((base_max - base_min) - params.feed_width_mm) < 0.01);
  }

  SUBCASE("no notches produces the bare antenna") {
    DesignParams bare = params;
    bare.notches.clear();
    const AntennaGeometry geom = build_geometry(bare);
    CHECK(count_slots(geom) == 0);
    CHECK(geom.front.size() == 4);
    CHECK(geom.back.size() == 2);
  }

  SUBCASE("a tiny patch cannot host the slots") {
    DesignParams broken = params;
    broken.patch_radius_mm = 0.1;
    CHECK_THROWS_WITH_AS(build_geometry(broken), doctest::Contains("slot outside patch"),
                         GeometryError);
  }

  SUBCASE("ground wider than the substrate is rejected") {
    DesignParams broken = params;
    broken.ground_width_mm = broken.substrate_width_mm + 1.0;
    CHECK_THROWS_AS(build_geometry(broken), std::invalid_argument);
  }
}

TEST_CASE("layout validation catches constructed violations") {
  SUBCASE("overlapping slots") {
    AntennaGeometry geom;
    geom.front.push_back({ShapeRole::kPatch, Circle{{0.0, 0.0}, 10.0}});
    geom.front.push_back({ShapeRole::kSlot,
                          slot_path(SlotKind::kInvertedCPatch, 12.0, 0.3, 4.0, {0.0, 1.0}, 0.0)});
    geom.front.push_back({ShapeRole::kSlot,
                          slot_path(SlotKind::kInvertedCPatch, 12.0, 0.3, 4.0, {0.0, 1.1}, 0.0)});
    const auto violations = validate_geometry(geom);
    bool found = false;
    for (const auto& v : violations) found = found || v.find("slots overlap") != std::string::npos;
    CHECK(found);
  }

  SUBCASE("self-intersecting centerline") {
    AntennaGeometry geom;
    SlotPath bad;
    bad.kind = SlotKind::kInvertedCPatch;
    bad.width_mm = 0.1;
    bad.centerline = {{-2.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {0.0, 1.0}, {0.0, -1.0}};
    geom.front.push_back({ShapeRole::kPatch, Circle{{0.0, 0.0}, 10.0}});
    geom.front.push_back({ShapeRole::kSlot, bad});
    const auto violations = validate_geometry(geom);
    bool found = false;
    for (const auto& v : violations)
      found = found || v.find("self-intersects") != std::string::npos;
    CHECK(found);
  }

  SUBCASE("minimal generic layout is acceptable") {
    AntennaGeometry geom;
    geom.front.push_back({ShapeRole::kGeneric, Rect{{0.0, 0.0}, {10.0, 10.0}}});
    geom.back.push_back({ShapeRole::kGeneric, Rect{{0.0, 0.0}, {10.0, 10.0}}});
    CHECK(validate_geometry(geom).empty());
  }
}

TEST_CASE("svg export") {
  const AntennaGeometry geom = build_geometry(default_design());
  const std::string svg = export_svg(geom);

  SUBCASE("well-formed") { CHECK(xml_well_formed(svg)); }

  SUBCASE("viewBox equals the substrate dimensions") {
    CHECK(svg.find("viewBox=\"0 0 22 32\"") != std::string::npos);
  }

  SUBCASE("named layer groups present") {
    CHECK(svg.find("<g id=\"front\">") != std::string::npos);
    CHECK(svg.find("<g id=\"back\">") != std::string::npos);
    CHECK(svg.find("fill-rule=\"evenodd\"") != std::string::npos);
  }
}

TEST_CASE("layout json round trip") {
  const AntennaGeometry geom = build_geometry(default_design());

  SUBCASE("lossless round trip") {
    const std::string text = export_json_text(geom);
    const AntennaGeometry back = import_json_text(text);
    CHECK(geometry_equal(geom, back, 1e-9));
  }

  SUBCASE("truncated document is a schema error") {
    const std::string text = export_json_text(geom);
    CHECK_THROWS_AS(import_json_text(text.substr(0, text.size() / 2)), SchemaError);
  }

  SUBCASE("minimal hand-written document imports") {
    const std::string doc = R"({
      "schema_version": 1,
      "front": [{"type": "rect", "min": [0, 0], "max": [10, 20]}],
      "back": [{"type": "rect", "min": [0, 0], "max": [10, 5]}]
    })";
    const AntennaGeometry minimal = import_json_text(doc);
    CHECK(minimal.front.size() == 1);
    CHECK(minimal.back.size() == 1);
    CHECK(validate_geometry(minimal).empty());
  }

  SUBCASE("schema errors carry the offending path") {
    const std::string doc = R"({
      "schema_version": 1,
      "front": [{"type": "circle", "center": [0, 0], "radius": -4}],
      "back": []
    })";
    try {
      import_json_text(doc);
      FAIL("expected a schema error");
    } catch (const SchemaError& e) {
      CHECK(e.path() == "/front/0/radius");
    }
  }

  SUBCASE("unknown shape type is rejected") {
    const std::string doc = R"({
      "schema_version": 1,
      "front": [{"type": "hexagon"}],
      "back": []
    })";
    CHECK_THROWS_AS(import_json_text(doc), SchemaError);
  }
}
