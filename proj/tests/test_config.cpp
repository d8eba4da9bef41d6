// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "uwbnotch/config.hpp"
#include "uwbnotch/microstrip.hpp"

using namespace uwbnotch;
using nlohmann::json;

TEST_CASE("default configuration") {
  const DesignConfig cfg = default_config();
  CHECK_NOTHROW(cfg.design.validate());
  REQUIRE(cfg.design.notches.size() == 3);
  CHECK(cfg.design.notches[0].target_center.ghz() == 3.5);
  CHECK(cfg.design.notches[2].slot_kind == SlotKind::kUFeedline);
  CHECK(cfg.sweep.grid().size() == 1001);
  CHECK(cfg.uwb.f_lo.ghz() == 3.1);
}

TEST_CASE("configuration round trip") {
  const DesignConfig cfg = default_config();
  const DesignConfig back = parse_config(config_to_json(cfg));
  CHECK(back.design.patch_radius_mm == cfg.design.patch_radius_mm);
  CHECK(back.design.taper.zl_ohm == cfg.design.taper.zl_ohm);
  CHECK(back.design.notches.size() == cfg.design.notches.size());
  for (size_t i = 0; i < cfg.design.notches.size(); ++i) {
    CHECK(back.design.notches[i].slot_length_mm == cfg.design.notches[i].slot_length_mm);
    CHECK(back.design.notches[i].q_factor == cfg.design.notches[i].q_factor);
  }
  CHECK(back.sweep.step_hz == cfg.sweep.step_hz);
  CHECK(back.output_dir == cfg.output_dir);
}

TEST_CASE("partial configurations inherit the defaults") {
  const DesignConfig cfg = parse_config(json::parse("{}"));
  const DesignConfig ref = default_config();
  CHECK(cfg.design.patch_radius_mm == ref.design.patch_radius_mm);
  CHECK(cfg.design.notches.size() == 3);

  const DesignConfig sparse = parse_config(json::parse(R"({
    "board": {"feed_width_mm": 2.0},
    "sweep": {"step_hz": 2.0e7}
  })"));
  CHECK(sparse.design.feed_width_mm == 2.0);
  CHECK(sparse.design.substrate_length_mm == ref.design.substrate_length_mm);
  CHECK(sparse.sweep.step_hz == 2.0e7);
}

TEST_CASE("omitted slot lengths are synthesized from the target") {
  const DesignConfig cfg = parse_config(json::parse(R"({
    "notches": [
      {"name": "one", "target_hz": 4.0e9, "band_lo_hz": 3.8e9, "band_hi_hz": 4.2e9,
       "slot_kind": "inverted-C-patch", "slot_length_mm": 0}
    ]
  })"));
  REQUIRE(cfg.design.notches.size() == 1);
  const double eps_eff = effective_permittivity_simple(cfg.design.substrate.eps_r);
  CHECK(cfg.design.notches[0].slot_length_mm ==
        slot_length_for_frequency_mm(Frequency(4.0e9), eps_eff));
}

TEST_CASE("patch radius synthesized from a design frequency") {
  const DesignConfig cfg = parse_config(json::parse(R"({
    "board": {"patch_radius_mm": 0, "patch_design_frequency_hz": 6.05e9}
  })"));
  CHECK(std::abs(cfg.design.patch_radius_mm - 6.536) < 0.01);
}

TEST_CASE("schema violations carry paths") {
  auto expect_path = [](const char* text, const std::string& lead) {
    try {
      parse_config(json::parse(text));
      FAIL_CHECK("expected a schema error for ", text);
    } catch (const SchemaError& e) {
      CHECK(e.path().rfind(lead, 0) == 0);
    }
  };
  expect_path(R"({"substrate": {"height_mm": -1.6}})", "/substrate/height_mm");
  expect_path(R"({"substrate": {"eps_r": 0.5}})", "/substrate/eps_r");
  expect_path(R"({"board": {"bogus_field": 1}})", "/board/bogus_field");
  expect_path(R"({"sweep": {"f_lo_hz": 5e9, "f_hi_hz": 3e9}})", "/sweep");
  expect_path(R"({"notches": [{"target_hz": 9.9e9, "band_lo_hz": 3.3e9, "band_hi_hz": 3.7e9}]})",
              "/notches/0");
  expect_path(R"({"schema_version": 2})", "/schema_version");
  expect_path(R"({"uwb_band": {"f_lo_hz": 9e9, "f_hi_hz": 4e9}})", "/uwb_band");
}

TEST_CASE("slot sizing rows flag reference disagreements") {
  const DesignConfig cfg = default_config();
  const double eps_eff = effective_permittivity_simple(cfg.design.substrate.eps_r);
  const auto rows = slot_sizing_rows(cfg.design.notches, eps_eff);
  REQUIRE(rows.size() == 3);

  CHECK_FALSE(rows[0].flagged);  // 26.34 mm reference sits ~1% off
  CHECK(rows[1].flagged);        // 19.3 mm reference disagrees by ~14%
  CHECK_FALSE(rows[2].flagged);  // 12.29 mm reference sits ~1% off
  CHECK(rows[0].reference_deviation_percent < 1.5);
  CHECK(rows[1].reference_deviation_percent > 10.0);
  CHECK(rows[2].reference_deviation_percent < 1.5);
  CHECK(std::abs(rows[1].synthesized_length_mm - 16.59) < 0.02);
}
