// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "uwbnotch/microstrip.hpp"

namespace uwbnotch {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) throw SchemaError(path + "/" + it.key(), "unknown field");
}

double get_number(const json& obj, const char* key, double fallback, const std::string& path,
                  bool require_positive = true, bool allow_zero = false) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw SchemaError(path + "/" + key, "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw SchemaError(path + "/" + key, "must be finite");
  if (require_positive && !(v > 0.0 || (allow_zero && v == 0.0)))
    throw SchemaError(path + "/" + key, allow_zero ? "must be >= 0" : "must be > 0");
  return v;
}

int get_int(const json& obj, const char* key, int fallback, const std::string& path, int min_v) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) throw SchemaError(path + "/" + key, "expected an integer");
  const int v = it->get<int>();
  if (v < min_v)
    throw SchemaError(path + "/" + key, "must be >= " + std::to_string(min_v));
  return v;
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) throw SchemaError(path + "/" + key, "expected a string");
  return it->get<std::string>();
}

const json* get_object(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return nullptr;
  if (!it->is_object()) throw SchemaError(path + "/" + key, "expected an object");
  return &*it;
}

NotchSpec parse_notch(const json& j, const std::string& path, double eps_eff,
                      const NotchSpec* fallback) {
  if (!j.is_object()) throw SchemaError(path, "expected a notch object");
  reject_unknown_keys(j,
                      {"name", "target_hz", "band_lo_hz", "band_hi_hz", "slot_kind",
                       "slot_length_mm", "slot_width_mm", "q_factor", "bridge_ratio", "arm_ratio",
                       "reference_length_mm"},
                      path);

  const std::string name = get_string(j, "name", fallback ? fallback->band.name : "notch", path);
  const double target =
      get_number(j, "target_hz", fallback ? fallback->target_center.hz() : 0.0, path);
  const double lo = get_number(j, "band_lo_hz", fallback ? fallback->band.f_lo.hz() : 0.0, path);
  const double hi = get_number(j, "band_hi_hz", fallback ? fallback->band.f_hi.hz() : 0.0, path);
  if (!(target > 0.0)) throw SchemaError(path + "/target_hz", "missing or not positive");
  if (!(lo > 0.0 && hi > lo))
    throw SchemaError(path, "band_lo_hz/band_hi_hz must satisfy 0 < lo < hi");

  NotchSpec spec{Frequency(target), ServiceBand(name, Frequency(lo), Frequency(hi))};
  const std::string kind =
      get_string(j, "slot_kind", fallback ? to_string(fallback->slot_kind) : "inverted-C-patch",
                 path);
  try {
    spec.slot_kind = slot_kind_from_string(kind);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + "/slot_kind", e.what());
  }
  // 0 (or omitted with no fallback) means: synthesize from the target.
  double length = get_number(j, "slot_length_mm",
                             fallback ? fallback->slot_length_mm : 0.0, path, true, true);
  if (length == 0.0) length = slot_length_for_frequency_mm(spec.target_center, eps_eff);
  spec.slot_length_mm = length;
  spec.slot_width_mm =
      get_number(j, "slot_width_mm", fallback ? fallback->slot_width_mm : 0.3, path);
  spec.q_factor = get_number(j, "q_factor", fallback ? fallback->q_factor : 20.0, path);
  spec.bridge_ratio =
      get_number(j, "bridge_ratio", fallback ? fallback->bridge_ratio : 2.0, path);
  spec.arm_ratio = get_number(j, "arm_ratio", fallback ? fallback->arm_ratio : 1.0, path);
  spec.reference_length_mm = get_number(
      j, "reference_length_mm", fallback ? fallback->reference_length_mm : 0.0, path, true, true);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
  return spec;
}

}  // namespace

DesignConfig default_config() {
  DesignConfig cfg;
  cfg.design = default_design();
  return cfg;
}

DesignConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");
  reject_unknown_keys(doc,
                      {"schema_version", "substrate", "board", "taper", "model", "notches",
                       "uwb_band", "sweep", "tune", "output_dir"},
                      "");
  if (auto it = doc.find("schema_version"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<int>() != 1)
      throw SchemaError("/schema_version", "unsupported schema version");
  }

  DesignConfig cfg = default_config();

  if (const json* sub = get_object(doc, "substrate", "")) {
    reject_unknown_keys(*sub, {"eps_r", "height_mm", "metal_thickness_mm", "loss_tangent"},
                        "/substrate");
    auto& s = cfg.design.substrate;
    s.eps_r = get_number(*sub, "eps_r", s.eps_r, "/substrate");
    if (s.eps_r < 1.0) throw SchemaError("/substrate/eps_r", "must be >= 1");
    s.height_mm = get_number(*sub, "height_mm", s.height_mm, "/substrate");
    s.metal_thickness_mm =
        get_number(*sub, "metal_thickness_mm", s.metal_thickness_mm, "/substrate", true, true);
    s.loss_tangent = get_number(*sub, "loss_tangent", s.loss_tangent, "/substrate", true, true);
  }

  double patch_radius = cfg.design.patch_radius_mm;
  if (const json* board = get_object(doc, "board", "")) {
    reject_unknown_keys(*board,
                        {"substrate_length_mm", "substrate_width_mm", "patch_radius_mm",
                         "patch_design_frequency_hz", "feed_length_mm", "feed_width_mm",
                         "ground_length_mm", "ground_width_mm", "ground_cut_mm", "slot_gap_mm",
                         "taper_tip_min_width_mm"},
                        "/board");
    auto& d = cfg.design;
    d.substrate_length_mm = get_number(*board, "substrate_length_mm", d.substrate_length_mm, "/board");
    d.substrate_width_mm = get_number(*board, "substrate_width_mm", d.substrate_width_mm, "/board");
    patch_radius = get_number(*board, "patch_radius_mm", patch_radius, "/board", true, true);
    cfg.patch_design_frequency_hz = get_number(*board, "patch_design_frequency_hz",
                                               cfg.patch_design_frequency_hz, "/board", true, true);
    d.feed_length_mm = get_number(*board, "feed_length_mm", d.feed_length_mm, "/board");
    d.feed_width_mm = get_number(*board, "feed_width_mm", d.feed_width_mm, "/board");
    d.ground_length_mm = get_number(*board, "ground_length_mm", d.ground_length_mm, "/board");
    d.ground_width_mm = get_number(*board, "ground_width_mm", d.ground_width_mm, "/board");
    d.ground_cut_mm = get_number(*board, "ground_cut_mm", d.ground_cut_mm, "/board", true, true);
    d.slot_gap_mm = get_number(*board, "slot_gap_mm", d.slot_gap_mm, "/board", true, true);
    d.taper_tip_min_width_mm =
        get_number(*board, "taper_tip_min_width_mm", d.taper_tip_min_width_mm, "/board");
  }
  if (patch_radius == 0.0) {
    if (cfg.patch_design_frequency_hz == 0.0)
      throw SchemaError("/board/patch_radius_mm",
                        "either patch_radius_mm or patch_design_frequency_hz is required");
    patch_radius = circular_patch_radius_mm(Frequency(cfg.patch_design_frequency_hz),
                                            cfg.design.substrate);
  }
  cfg.design.patch_radius_mm = patch_radius;

  if (const json* taper = get_object(doc, "taper", "")) {
    reject_unknown_keys(*taper, {"z0_ohm", "zl_ohm", "length_mm", "segments"}, "/taper");
    auto& t = cfg.design.taper;
    t.z0_ohm = get_number(*taper, "z0_ohm", t.z0_ohm, "/taper");
    t.zl_ohm = get_number(*taper, "zl_ohm", t.zl_ohm, "/taper");
    t.length_mm = get_number(*taper, "length_mm", t.length_mm, "/taper");
    t.segments = get_int(*taper, "segments", t.segments, "/taper", 2);
  }

  if (const json* model = get_object(doc, "model", "")) {
    reject_unknown_keys(*model,
                        {"gamma_match", "f_low_hz", "taper_length_mm", "taper_segments",
                         "resonator_r_fraction", "load_ohm"},
                        "/model");
    auto& m = cfg.model;
    m.gamma_match = get_number(*model, "gamma_match", m.gamma_match, "/model");
    m.f_low_hz = get_number(*model, "f_low_hz", m.f_low_hz, "/model");
    m.taper_length_mm = get_number(*model, "taper_length_mm", m.taper_length_mm, "/model", true, true);
    m.taper_segments = get_int(*model, "taper_segments", m.taper_segments, "/model", 2);
    m.resonator_r_fraction =
        get_number(*model, "resonator_r_fraction", m.resonator_r_fraction, "/model");
    m.load_ohm = get_number(*model, "load_ohm", m.load_ohm, "/model", true, true);
  }

  const double eps_eff = effective_permittivity_simple(cfg.design.substrate.eps_r);
  if (auto it = doc.find("notches"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("/notches", "expected an array");
    const std::vector<NotchSpec> defaults = cfg.design.notches;
    cfg.design.notches.clear();
    for (size_t i = 0; i < it->size(); ++i) {
      const NotchSpec* fallback = i < defaults.size() ? &defaults[i] : nullptr;
      cfg.design.notches.push_back(
          parse_notch((*it)[i], "/notches/" + std::to_string(i), eps_eff, fallback));
    }
  }

  if (const json* band = get_object(doc, "uwb_band", "")) {
    reject_unknown_keys(*band, {"f_lo_hz", "f_hi_hz"}, "/uwb_band");
    const double lo = get_number(*band, "f_lo_hz", cfg.uwb.f_lo.hz(), "/uwb_band");
    const double hi = get_number(*band, "f_hi_hz", cfg.uwb.f_hi.hz(), "/uwb_band");
    if (!(hi > lo)) throw SchemaError("/uwb_band", "f_hi_hz must exceed f_lo_hz");
    cfg.uwb = ServiceBand("UWB", Frequency(lo), Frequency(hi));
  }

  if (const json* sweep = get_object(doc, "sweep", "")) {
    reject_unknown_keys(*sweep, {"f_lo_hz", "f_hi_hz", "step_hz"}, "/sweep");
    cfg.sweep.f_lo_hz = get_number(*sweep, "f_lo_hz", cfg.sweep.f_lo_hz, "/sweep");
    cfg.sweep.f_hi_hz = get_number(*sweep, "f_hi_hz", cfg.sweep.f_hi_hz, "/sweep");
    cfg.sweep.step_hz = get_number(*sweep, "step_hz", cfg.sweep.step_hz, "/sweep");
    if (!(cfg.sweep.f_hi_hz > cfg.sweep.f_lo_hz))
      throw SchemaError("/sweep", "f_hi_hz must exceed f_lo_hz");
  }

  if (const json* tune = get_object(doc, "tune", "")) {
    reject_unknown_keys(*tune, {"tolerance_hz", "max_iterations"}, "/tune");
    cfg.tune.tolerance_hz = get_number(*tune, "tolerance_hz", cfg.tune.tolerance_hz, "/tune");
    cfg.tune.max_iterations = get_int(*tune, "max_iterations", cfg.tune.max_iterations, "/tune", 1);
  }

  cfg.output_dir = get_string(doc, "output_dir", cfg.output_dir, "");

  try {
    cfg.design.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError("(design)", e.what());
  }
  return cfg;
}

DesignConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("(file)", "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("(document)", e.what());
  }
  return parse_config(doc);
}

json config_to_json(const DesignConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["substrate"] = {{"eps_r", cfg.design.substrate.eps_r},
                    {"height_mm", cfg.design.substrate.height_mm},
                    {"metal_thickness_mm", cfg.design.substrate.metal_thickness_mm},
                    {"loss_tangent", cfg.design.substrate.loss_tangent}};
  j["board"] = {{"substrate_length_mm", cfg.design.substrate_length_mm},
                {"substrate_width_mm", cfg.design.substrate_width_mm},
                {"patch_radius_mm", cfg.design.patch_radius_mm},
                {"feed_length_mm", cfg.design.feed_length_mm},
                {"feed_width_mm", cfg.design.feed_width_mm},
                {"ground_length_mm", cfg.design.ground_length_mm},
                {"ground_width_mm", cfg.design.ground_width_mm},
                {"ground_cut_mm", cfg.design.ground_cut_mm},
                {"slot_gap_mm", cfg.design.slot_gap_mm},
                {"taper_tip_min_width_mm", cfg.design.taper_tip_min_width_mm}};
  if (cfg.patch_design_frequency_hz > 0.0)
    j["board"]["patch_design_frequency_hz"] = cfg.patch_design_frequency_hz;
  j["taper"] = {{"z0_ohm", cfg.design.taper.z0_ohm},
                {"zl_ohm", cfg.design.taper.zl_ohm},
                {"length_mm", cfg.design.taper.length_mm},
                {"segments", cfg.design.taper.segments}};
  j["model"] = {{"gamma_match", cfg.model.gamma_match},
                {"f_low_hz", cfg.model.f_low_hz},
                {"taper_length_mm", cfg.model.taper_length_mm},
                {"taper_segments", cfg.model.taper_segments},
                {"resonator_r_fraction", cfg.model.resonator_r_fraction},
                {"load_ohm", cfg.model.load_ohm}};
  json notches = json::array();
  for (const auto& n : cfg.design.notches) {
    notches.push_back({{"name", n.band.name},
                       {"target_hz", n.target_center.hz()},
                       {"band_lo_hz", n.band.f_lo.hz()},
                       {"band_hi_hz", n.band.f_hi.hz()},
                       {"slot_kind", to_string(n.slot_kind)},
                       {"slot_length_mm", n.slot_length_mm},
                       {"slot_width_mm", n.slot_width_mm},
                       {"q_factor", n.q_factor},
                       {"bridge_ratio", n.bridge_ratio},
                       {"arm_ratio", n.arm_ratio},
                       {"reference_length_mm", n.reference_length_mm}});
  }
  j["notches"] = std::move(notches);
  j["uwb_band"] = {{"f_lo_hz", cfg.uwb.f_lo.hz()}, {"f_hi_hz", cfg.uwb.f_hi.hz()}};
  j["sweep"] = {{"f_lo_hz", cfg.sweep.f_lo_hz},
                {"f_hi_hz", cfg.sweep.f_hi_hz},
                {"step_hz", cfg.sweep.step_hz}};
  j["tune"] = {{"tolerance_hz", cfg.tune.tolerance_hz},
               {"max_iterations", cfg.tune.max_iterations}};
  j["output_dir"] = cfg.output_dir;
  return j;
}

std::vector<SlotSizingRow> slot_sizing_rows(const std::vector<NotchSpec>& notches,
                                            double eps_eff) {
  std::vector<SlotSizingRow> rows;
  rows.reserve(notches.size());
  for (const auto& n : notches) {
    SlotSizingRow row;
    row.name = n.band.name;
    row.target_hz = n.target_center.hz();
    row.design_length_mm = n.slot_length_mm;
    row.synthesized_length_mm = slot_length_for_frequency_mm(n.target_center, eps_eff);
    row.reference_length_mm = n.reference_length_mm;
    if (n.reference_length_mm > 0.0) {
      row.reference_deviation_percent =
          std::abs(row.synthesized_length_mm - n.reference_length_mm) / n.reference_length_mm *
          100.0;
      row.flagged = row.reference_deviation_percent > 2.0;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace uwbnotch
