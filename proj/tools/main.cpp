// SPDX-License-Identifier: Apache-2.0
//
// uwbnotch — design, analyze, tune and export band-notched UWB antennas
// from a single JSON configuration. Exit codes: 0 ok, 2 configuration or
// validation failure, 3 model construction failure, 4 tuning did not
// converge (best-so-far report still written).

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <string>

#include "uwbnotch/config.hpp"
#include "uwbnotch/geometry_io.hpp"
#include "uwbnotch/microstrip.hpp"
#include "uwbnotch/model.hpp"
#include "uwbnotch/optimizer.hpp"
#include "uwbnotch/svg.hpp"
#include "uwbnotch/taper.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace uwbnotch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitModel = 3;
constexpr int kExitNoConvergence = 4;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir;
  std::string sweep_override;  // lo:hi:step in GHz
};

DesignConfig load_or_default(const GlobalArgs& args) {
  DesignConfig cfg =
      args.config_path.empty() ? default_config() : load_config_file(args.config_path);
  if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
  if (!args.sweep_override.empty()) {
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(args.sweep_override.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
        !(lo > 0 && hi > lo && step > 0))
      throw SchemaError("(--sweep)", "expected lo:hi:step in GHz with 0 < lo < hi and step > 0");
    cfg.sweep = SweepSpec{lo * 1e9, hi * 1e9, step * 1e9};
  }
  return cfg;
}

void write_text_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json band_report_to_json(const RejectionReport& report) {
  json j;
  j["schema_version"] = 1;
  json bands = json::array();
  for (const auto& b : report.bands)
    bands.push_back({{"name", b.name},
                     {"f_lo_hz", b.f_lo_hz},
                     {"f_hi_hz", b.f_hi_hz},
                     {"rejected", b.rejected},
                     {"min_vswr", b.min_vswr},
                     {"max_vswr", b.max_vswr}});
  j["bands"] = std::move(bands);
  json gaps = json::array();
  for (const auto& g : report.mismatch_intervals)
    gaps.push_back({{"f_lo_hz", g.lo_hz}, {"f_hi_hz", g.hi_hz}});
  j["mismatch_intervals"] = std::move(gaps);
  json pass = json::array();
  for (const auto& p : report.passbands_10db)
    pass.push_back({{"f_lo_hz", p.lo_hz}, {"f_hi_hz", p.hi_hz}});
  j["passbands_10db"] = std::move(pass);
  j["matched_outside_notches"] = report.matched_outside_notches;
  return j;
}

json sizing_rows_to_json(const std::vector<SlotSizingRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row = {{"name", r.name},
                {"target_hz", r.target_hz},
                {"design_length_mm", r.design_length_mm},
                {"synthesized_length_mm", r.synthesized_length_mm}};
    if (r.reference_length_mm > 0.0) {
      row["reference_length_mm"] = r.reference_length_mm;
      row["reference_deviation_percent"] = r.reference_deviation_percent;
      row["flagged"] = r.flagged;
    }
    arr.push_back(std::move(row));
  }
  return arr;
}

void print_sizing_rows(const std::vector<SlotSizingRow>& rows) {
  std::printf("  %-18s %9s %12s %12s %11s %8s\n", "notch", "target", "length mm", "half-wave mm",
              "reference", "dev %");
  for (const auto& r : rows) {
    std::printf("  %-18s %6.2f GHz %12.4f %12.4f", r.name.c_str(), r.target_hz / 1e9,
                r.design_length_mm, r.synthesized_length_mm);
    if (r.reference_length_mm > 0.0)
      std::printf(" %11.2f %7.2f%s\n", r.reference_length_mm, r.reference_deviation_percent,
                  r.flagged ? "  <-- disagrees with the half-wave value" : "");
    else
      std::printf(" %11s %8s\n", "-", "-");
  }
}

int cmd_design(const DesignConfig& cfg) {
  const double eps_eff = effective_permittivity_simple(cfg.design.substrate.eps_r);
  const auto rows = slot_sizing_rows(cfg.design.notches, eps_eff);
  const double exponent = taper_exponent_per_mm(cfg.design.taper);
  const double feed_z = microstrip_impedance(cfg.design.feed_width_mm, cfg.design.substrate);

  AntennaGeometry geom;
  try {
    geom = build_geometry(cfg.design);
  } catch (const GeometryError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  const std::string svg = export_svg(geom);
  const std::string geo_json = export_json_text(geom);

  std::printf("Design parameters\n");
  std::printf("  substrate        %g x %g mm, eps_r %.3f, h %.3f mm (eps_eff %.3f)\n",
              cfg.design.substrate_length_mm, cfg.design.substrate_width_mm,
              cfg.design.substrate.eps_r, cfg.design.substrate.height_mm, eps_eff);
  std::printf("  patch radius     %.3f mm\n", cfg.design.patch_radius_mm);
  std::printf("  feed             %.2f x %.2f mm (%.2f ohm)\n", cfg.design.feed_length_mm,
              cfg.design.feed_width_mm, feed_z);
  std::printf("  taper            %.1f -> %.1f ohm over %.2f mm, a = %.4f /mm (aL = %.4f)\n",
              cfg.design.taper.z0_ohm, cfg.design.taper.zl_ohm, cfg.design.taper.length_mm,
              exponent, exponent * cfg.design.taper.length_mm);
  std::printf("  ground           %g x %g mm, square cut %g mm\n", cfg.design.ground_length_mm,
              cfg.design.ground_width_mm, cfg.design.ground_cut_mm);
  std::printf("Notch slots (half guided wavelength at each target)\n");
  print_sizing_rows(rows);

  json report;
  report["schema_version"] = 1;
  report["eps_eff"] = eps_eff;
  report["feed_impedance_ohm"] = feed_z;
  report["taper_exponent_per_mm"] = exponent;
  report["slots"] = sizing_rows_to_json(rows);

  const fs::path out(cfg.output_dir);
  write_text_file(out / "design.json", geo_json);
  write_text_file(out / "design.svg", svg);
  write_text_file(out / "design_report.json", report.dump(2) + "\n");
  std::printf("wrote %s, %s, %s\n", (out / "design.json").c_str(), (out / "design.svg").c_str(),
              (out / "design_report.json").c_str());
  return kExitOk;
}

int cmd_export(const DesignConfig& cfg) {
  AntennaGeometry geom;
  try {
    geom = build_geometry(cfg.design);
  } catch (const GeometryError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  const fs::path out(cfg.output_dir);
  write_text_file(out / "geometry.json", export_json_text(geom));
  write_text_file(out / "geometry.svg", export_svg(geom));
  std::printf("wrote %s, %s\n", (out / "geometry.json").c_str(), (out / "geometry.svg").c_str());
  return kExitOk;
}

int cmd_analyze(const DesignConfig& cfg) {
  S11Trace trace;
  RejectionReport report;
  try {
    AntennaModel model(cfg.design, cfg.model);
    trace = sweep(model.network(), model.z_ref_ohm(), model.z_load_ohm(), cfg.sweep.grid());
    std::vector<ServiceBand> protected_bands;
    for (const auto& n : cfg.design.notches) protected_bands.push_back(n.band);
    report = band_rejection_report(trace, protected_bands, cfg.uwb);
  } catch (const std::exception& e) {
    std::cerr << "model construction failed: " << e.what() << "\n";
    return kExitModel;
  }

  for (const auto& b : report.bands)
    std::printf("band %-18s %5.2f-%5.2f GHz  %s (VSWR %.2f .. %.2f)\n", b.name.c_str(),
                b.f_lo_hz / 1e9, b.f_hi_hz / 1e9, b.rejected ? "REJECTED" : "not rejected",
                b.min_vswr, b.max_vswr);
  std::printf("operating band matched outside notches: %s\n",
              report.matched_outside_notches ? "yes" : "no");

  const fs::path out(cfg.output_dir);
  write_text_file(out / "trace.csv", to_csv(trace));
  write_text_file(out / "band_report.json", band_report_to_json(report).dump(2) + "\n");
  std::printf("wrote %s, %s\n", (out / "trace.csv").c_str(), (out / "band_report.json").c_str());
  return kExitOk;
}

int cmd_notch(const DesignConfig& cfg) {
  const double eps_eff = effective_permittivity_simple(cfg.design.substrate.eps_r);
  const auto rows = slot_sizing_rows(cfg.design.notches, eps_eff);
  std::printf("Slot sizing at eps_eff = %.3f\n", eps_eff);
  print_sizing_rows(rows);
  for (const auto& r : rows)
    if (r.flagged)
      std::printf("note: %s reference length %.2f mm deviates %.1f%% from the half-wave value "
                  "%.4f mm\n",
                  r.name.c_str(), r.reference_length_mm, r.reference_deviation_percent,
                  r.synthesized_length_mm);
  json report;
  report["schema_version"] = 1;
  report["eps_eff"] = eps_eff;
  report["slots"] = sizing_rows_to_json(rows);
  const fs::path out(cfg.output_dir);
  write_text_file(out / "notch_report.json", report.dump(2) + "\n");
  std::printf("wrote %s\n", (out / "notch_report.json").c_str());
  return kExitOk;
}

int cmd_optimize(const DesignConfig& cfg) {
  TuneResult result;
  bool converged = true;
  std::vector<double> initial;
  std::vector<double> targets;
  try {
    AntennaModel model(cfg.design, cfg.model);
    TuneProblem problem;
    problem.initial_lengths_mm = model.design_lengths_mm();
    for (const auto& n : cfg.design.notches) problem.targets_hz.push_back(n.target_center.hz());
    for (double l : problem.initial_lengths_mm) problem.bounds_mm.emplace_back(0.7 * l, 1.3 * l);
    problem.sweep_hz = cfg.sweep.grid();
    problem.tolerance_hz = cfg.tune.tolerance_hz;
    problem.max_iterations = cfg.tune.max_iterations;
    problem.z_ref_ohm = model.z_ref_ohm();
    problem.z_load_ohm = model.z_load_ohm();
    problem.band = cfg.uwb;
    problem.build_network = [&model](const std::vector<double>& lengths) {
      return model.network(lengths);
    };
    initial = problem.initial_lengths_mm;
    targets = problem.targets_hz;
    try {
      result = tune(problem);
    } catch (const NoConvergenceError& e) {
      result = e.best();
      converged = false;
    }
  } catch (const std::exception& e) {
    std::cerr << "optimize failed: " << e.what() << "\n";
    return kExitModel;
  }

  for (size_t i = 0; i < result.tuned_lengths_mm.size(); ++i)
    std::printf("slot %zu: %.4f mm -> %.4f mm, centre %.4f GHz (target %.4f GHz)\n", i,
                initial[i], result.tuned_lengths_mm[i], result.achieved_centers_hz[i] / 1e9,
                targets[i] / 1e9);
  std::printf("%s after %d iterations, objective %.6g\n",
              converged ? "converged" : "DID NOT CONVERGE", result.iterations,
              result.objective_value);

  json report;
  report["schema_version"] = 1;
  report["targets_hz"] = targets;
  report["initial_lengths_mm"] = initial;
  report["tuned_lengths_mm"] = result.tuned_lengths_mm;
  report["achieved_centers_hz"] = result.achieved_centers_hz;
  report["objective_value"] = result.objective_value;
  report["iterations"] = result.iterations;
  report["converged"] = converged;
  const fs::path out(cfg.output_dir);
  write_text_file(out / "tune_report.json", report.dump(2) + "\n");
  std::printf("wrote %s\n", (out / "tune_report.json").c_str());
  return converged ? kExitOk : kExitNoConvergence;
}

int cmd_report(const DesignConfig& cfg) {
  RejectionReport rejection;
  try {
    AntennaModel model(cfg.design, cfg.model);
    const S11Trace trace =
        sweep(model.network(), model.z_ref_ohm(), model.z_load_ohm(), cfg.sweep.grid());
    std::vector<ServiceBand> protected_bands;
    for (const auto& n : cfg.design.notches) protected_bands.push_back(n.band);
    rejection = band_rejection_report(trace, protected_bands, cfg.uwb);
  } catch (const std::exception& e) {
    std::cerr << "model construction failed: " << e.what() << "\n";
    return kExitModel;
  }

  const char* kNotModeled = "not modeled";
  char vswr_result[128];
  std::snprintf(vswr_result, sizeof vswr_result,
                "%.1f - %.1f GHz matched outside the notch bands", cfg.uwb.f_lo.ghz(),
                cfg.uwb.f_hi.ghz());
  const bool vswr_pass = rejection.matched_outside_notches;

  json rows = json::array();
  auto add_row = [&rows](const char* parameter, const char* requirement, const std::string& result,
                         const char* status) {
    rows.push_back({{"parameter", parameter},
                    {"requirement", requirement},
                    {"result", result},
                    {"status", status}});
  };
  add_row("VSWR Bandwidth", "3.1 - 10.6 GHz", vswr_result, vswr_pass ? "PASS" : "FAIL");
  add_row("Radiation Efficiency", "High (>70%)", kNotModeled, kNotModeled);
  add_row("Phase", "Linear; Constant Delay", kNotModeled, kNotModeled);
  add_row("Radiation Pattern", "Omni directional", kNotModeled, kNotModeled);
  add_row("Directivity and Gain", "Low", kNotModeled, kNotModeled);
  add_row("Half Power Beamwidth", ">60 degrees", kNotModeled, kNotModeled);
  {
    char profile[96];
    std::snprintf(profile, sizeof profile, "planar, %g x %g x %g mm",
                  cfg.design.substrate_length_mm, cfg.design.substrate_width_mm,
                  cfg.design.substrate.height_mm);
    add_row("Physical Profile", "Small, Compact, Planar", profile, "PASS");
  }

  json notches = json::array();
  for (const auto& b : rejection.bands)
    notches.push_back({{"name", b.name},
                       {"f_lo_hz", b.f_lo_hz},
                       {"f_hi_hz", b.f_hi_hz},
                       {"status", b.rejected ? "PASS" : "FAIL"}});

  for (const auto& row : rows)
    std::printf("%-22s %-26s %-46s %s\n", row["parameter"].get<std::string>().c_str(),
                row["requirement"].get<std::string>().c_str(),
                row["result"].get<std::string>().c_str(),
                row["status"].get<std::string>().c_str());
  for (const auto& n : notches)
    std::printf("notch %-18s %5.2f-%5.2f GHz  %s\n", n["name"].get<std::string>().c_str(),
                n["f_lo_hz"].get<double>() / 1e9, n["f_hi_hz"].get<double>() / 1e9,
                n["status"].get<std::string>().c_str());

  json report;
  report["schema_version"] = 1;
  report["requirements"] = std::move(rows);
  report["notches"] = std::move(notches);
  const fs::path out(cfg.output_dir);
  write_text_file(out / "requirements_report.json", report.dump(2) + "\n");
  std::printf("wrote %s\n", (out / "requirements_report.json").c_str());
  return kExitOk;
}

struct TaperArgs {
  double z0 = 50.0;
  double zl = 50.0 * std::exp(2.37);
  double length_mm = 5.42;
  double eps_eff = 2.7;
  double gamma_max = 0.0;
  double f_low_ghz = 0.0;
  int points = 13;
};

int cmd_taper(const TaperArgs& args) {
  TaperSpec spec{args.z0, args.zl, args.length_mm, 1024};
  const double vp = kSpeedOfLightMps / std::sqrt(args.eps_eff);
  const double a = taper_exponent_per_mm(spec);
  std::printf("taper %.2f -> %.2f ohm over %.3f mm: a = %.6f /mm, aL = %.6f\n", args.z0, args.zl,
              args.length_mm, a, a * args.length_mm);

  std::printf("%10s %14s\n", "z (mm)", "Z (ohm)");
  for (int i = 0; i <= 10; ++i) {
    const double z = args.length_mm * i / 10.0;
    std::printf("%10.3f %14.4f\n", z, taper_impedance_at(z, spec));
  }

  std::printf("%10s %12s %14s %14s\n", "beta*l", "f (GHz)", "|refl| formula", "|refl| cascade");
  for (int i = 0; i < args.points; ++i) {
    const double beta_l = 0.25 + (3.0 * std::numbers::pi - 0.25) * i / (args.points - 1);
    const double f_hz = beta_l * vp / (2.0 * std::numbers::pi * args.length_mm * 1e-3);
    const Complex ga = analytic_taper_reflection(beta_l, args.z0, args.zl);
    const Complex gn = numeric_taper_reflection(spec, Frequency(f_hz), vp);
    std::printf("%10.4f %12.4f %14.6f %14.6f\n", beta_l, f_hz / 1e9, std::abs(ga), std::abs(gn));
  }

  if (args.gamma_max > 0.0) {
    const double len = min_taper_length_mm(args.z0, args.zl, args.gamma_max,
                                           Frequency::gigahertz(args.f_low_ghz), vp);
    std::printf("minimum length for |refl| <= %.4f above %.3f GHz: %.4f mm\n", args.gamma_max,
                args.f_low_ghz, len);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band-notched UWB antenna design toolkit"};
  app.require_subcommand(1);

  GlobalArgs global;
  app.add_option("--config", global.config_path, "JSON configuration file");
  app.add_option("--out", global.out_dir, "output directory (overrides the config)");
  app.add_option("--sweep", global.sweep_override, "sweep override lo:hi:step in GHz");

  auto* design = app.add_subcommand("design", "synthesize dimensions and export the layout");
  auto* analyze = app.add_subcommand("analyze", "sweep the circuit model and report rejection");
  auto* taper_cmd = app.add_subcommand("taper", "impedance profile and reflection of a taper");
  auto* notch = app.add_subcommand("notch", "slot sizing table for the configured notches");
  auto* optimize = app.add_subcommand("optimize", "tune slot lengths onto their targets");
  auto* export_cmd = app.add_subcommand("export", "write the layout as SVG and JSON");
  auto* report = app.add_subcommand("report", "requirements summary for the operating band");

  TaperArgs taper_args;
  taper_cmd->add_option("--z0", taper_args.z0, "source impedance, ohm");
  taper_cmd->add_option("--zl", taper_args.zl, "load impedance, ohm");
  taper_cmd->add_option("--length", taper_args.length_mm, "taper length, mm");
  taper_cmd->add_option("--eps-eff", taper_args.eps_eff, "effective permittivity");
  auto* gamma_opt =
      taper_cmd->add_option("--gamma-max", taper_args.gamma_max, "reflection bound for sizing");
  auto* flow_opt =
      taper_cmd->add_option("--f-low", taper_args.f_low_ghz, "lowest matched frequency, GHz");
  gamma_opt->needs(flow_opt);
  flow_opt->needs(gamma_opt);
  taper_cmd->add_option("--points", taper_args.points, "reflection table rows")
      ->check(CLI::Range(2, 10000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (taper_cmd->parsed()) return cmd_taper(taper_args);

    DesignConfig cfg;
    try {
      cfg = load_or_default(global);
    } catch (const SchemaError& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return kExitConfig;
    }

    if (design->parsed()) return cmd_design(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (notch->parsed()) return cmd_notch(cfg);
    if (optimize->parsed()) return cmd_optimize(cfg);
    if (export_cmd->parsed()) return cmd_export(cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
