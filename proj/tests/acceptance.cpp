// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.
//
// Usage: uwbnotch_acceptance <cli-binary> <golden-svg> [scratch-dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uwbnotch/config.hpp"
#include "uwbnotch/geometry_io.hpp"
#include "uwbnotch/microstrip.hpp"
#include "uwbnotch/model.hpp"
#include "uwbnotch/optimizer.hpp"
#include "uwbnotch/svg.hpp"
#include "uwbnotch/taper.hpp"

namespace fs = std::filesystem;
using namespace uwbnotch;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int criterion, bool ok, const std::string& label, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion 1: half-wave slot synthesis vs the reference sizes --------
void criterion_slot_synthesis() {
  const double eps_eff = effective_permittivity_simple(4.4);
  const double l1 = slot_length_for_frequency_mm(Frequency::gigahertz(3.5), eps_eff);
  const double l2 = slot_length_for_frequency_mm(Frequency::gigahertz(5.5), eps_eff);
  const double l3 = slot_length_for_frequency_mm(Frequency::gigahertz(7.5), eps_eff);

  const bool ok1 = std::abs(l1 - 26.34) / 26.34 <= 0.015;
  const bool ok3 = std::abs(l3 - 12.29) / 12.29 <= 0.015;
  const bool ok2 = std::abs(l2 - 16.59) <= 0.02;

  const auto rows = slot_sizing_rows(default_design().notches, eps_eff);
  const bool flags_ok =
      rows.size() == 3 && !rows[0].flagged && rows[1].flagged && !rows[2].flagged;

  char detail[256];
  std::snprintf(detail, sizeof detail,
                "lengths %.4f/%.4f/%.4f mm; refs 26.34/19.30/12.29; slot 2 discrepancy flagged=%s",
                l1, l2, l3, rows.size() == 3 && rows[1].flagged ? "yes" : "no");
  report(1, ok1 && ok2 && ok3 && flags_ok, "slot synthesis matches the reference sizes", detail);
}

// ---- criterion 2: simplified permittivity ---------------------------------
void criterion_permittivity() {
  report(2, effective_permittivity_simple(4.4) == 2.7,
         "simplified effective permittivity of FR-4 is exactly 2.7");
}

// ---- criterion 3: taper exponent-length product ----------------------------
void criterion_taper_exponent() {
  const TaperSpec spec{50.0, 50.0 * std::exp(2.37), 5.42, 1024};
  const double al = taper_exponent_per_mm(spec) * 5.42;
  char detail[96];
  std::snprintf(detail, sizeof detail, "a*L = %.9f", al);
  report(3, std::abs(al - 2.37) <= 1e-6, "taper exponent-length product recovers 2.37", detail);
}

// ---- criterion 4: analytic formula vs numeric cascade ---------------------
void criterion_reflection_oracle() {
  const auto start = std::chrono::steady_clock::now();
  const double vp = kSpeedOfLightMps / std::sqrt(2.7);
  const double length_m = 0.010;
  const TaperSpec spec{50.0, 60.0, 10.0, 4096};
  const double tol = 0.02 * 0.5 * std::log(60.0 / 50.0);

  auto gamma_at = [&](double beta_l) {
    const double f = beta_l * vp / (2.0 * kPi * length_m);
    return numeric_taper_reflection(spec, Frequency(f), vp);
  };

  double worst = 0.0;
  for (double beta_l = 0.1; beta_l <= 10.0; beta_l += 0.05) {
    const Complex diff = gamma_at(beta_l) - analytic_taper_reflection(beta_l, 50.0, 60.0);
    worst = std::max(worst, std::abs(diff));
  }
  const bool agree = worst <= tol;

  // Nulls of the numeric sweep, located by ternary search.
  bool nulls_ok = true;
  double worst_null = 0.0;
  for (int n = 1; n <= 3; ++n) {
    double lo = n * kPi - 0.1, hi = n * kPi + 0.1;
    for (int i = 0; i < 80; ++i) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (std::abs(gamma_at(m1)) < std::abs(gamma_at(m2)))
        hi = m2;
      else
        lo = m1;
    }
    const double null_pos = 0.5 * (lo + hi);
    worst_null = std::max(worst_null, std::abs(null_pos - n * kPi));
    nulls_ok = nulls_ok && std::abs(null_pos - n * kPi) <= 0.02;
  }

  const double elapsed = seconds_since(start);
  char detail[192];
  std::snprintf(detail, sizeof detail,
                "max |formula - cascade| = %.2e (tol %.2e); worst null offset %.4f rad; %.1f s",
                worst, tol, worst_null, elapsed);
  report(4, agree && nulls_ok && elapsed < 5.0,
         "analytic reflection agrees with the 4096-segment cascade", detail);
}

// ---- criterion 5: passivity and reciprocity over random networks ----------
void criterion_passivity_reciprocity() {
  std::mt19937 rng(20260809);
  std::uniform_real_distribution<double> z0_dist(5.0, 500.0);
  std::uniform_real_distribution<double> theta(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> f_dist(5e8, 2e10);
  std::uniform_real_distribution<double> l_dist(1e-10, 1e-7);
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_int_distribution<int> kind(0, 3);

  double worst_det = 0.0, worst_gamma = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double f = f_dist(rng);
    AbcdMatrix acc = AbcdMatrix::Identity();
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      if (kind(rng) != 0) {
        acc = acc * abcd_uniform_line(z0_dist(rng), theta(rng));
      } else {
        // Lossless shunt series-LC branch.
        const double l = l_dist(rng);
        const double f0 = f_dist(rng);
        const double c = 1.0 / (std::pow(2.0 * kPi * f0, 2) * l);
        acc = acc * NetworkElement::shunt_series_rlc(0.0, l, c).abcd_at(f);
      }
    }
    worst_det = std::max(worst_det, std::abs(acc.determinant() - Complex(1.0, 0.0)));
    worst_gamma = std::max(worst_gamma, std::abs(s11_from_abcd(acc, z0_dist(rng), z0_dist(rng))));
  }
  char detail[128];
  std::snprintf(detail, sizeof detail, "max |det-1| = %.2e, max |S11| = %.12f", worst_det,
                worst_gamma);
  report(5, worst_det <= 1e-9 && worst_gamma <= 1.0 + 1e-9,
         "10000 random lossless networks stay reciprocal and passive", detail);
}

// ---- criterion 6: quarter-wave inverter ------------------------------------
void criterion_quarter_wave() {
  const Complex g = s11_from_abcd(abcd_uniform_line(50.0, kPi / 2.0), 50.0, 100.0);
  char detail[96];
  std::snprintf(detail, sizeof detail, "S11 = %.12f%+.2ei", g.real(), g.imag());
  report(6, std::abs(g - Complex(-1.0 / 3.0, 0.0)) <= 1e-9,
         "quarter-wave line into a 2:1 load reflects -1/3", detail);
}

// ---- criterion 7: end-to-end notch tuning and rejection --------------------
void criterion_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  const DesignConfig cfg = default_config();
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

  bool centers_ok = false, rejected_ok = false, matched_ok = false;
  double worst_center = 0.0;
  try {
    const TuneResult result = tune(problem);
    centers_ok = result.converged;
    for (size_t i = 0; i < problem.targets_hz.size(); ++i) {
      const double miss = std::abs(result.achieved_centers_hz[i] - problem.targets_hz[i]);
      worst_center = std::max(worst_center, miss);
      centers_ok = centers_ok && miss <= 5e7;
    }

    const S11Trace trace = sweep(model.network(result.tuned_lengths_mm), model.z_ref_ohm(),
                                 model.z_load_ohm(), cfg.sweep.grid());
    std::vector<ServiceBand> protected_bands;
    for (const auto& n : cfg.design.notches) protected_bands.push_back(n.band);
    const auto rejection = band_rejection_report(trace, protected_bands, cfg.uwb);
    rejected_ok = true;
    for (const auto& b : rejection.bands) rejected_ok = rejected_ok && b.rejected;
    matched_ok = rejection.matched_outside_notches;
  } catch (const std::exception& e) {
    report(7, false, "tuned model rejects all three bands and stays matched elsewhere", e.what());
    return;
  }

  const double elapsed = seconds_since(start);
  char detail[192];
  std::snprintf(detail, sizeof detail,
                "worst centre offset %.1f MHz; bands rejected=%s; matched outside=%s; %.1f s",
                worst_center / 1e6, rejected_ok ? "yes" : "no", matched_ok ? "yes" : "no",
                elapsed);
  report(7, centers_ok && rejected_ok && matched_ok && elapsed < 60.0,
         "tuned model rejects all three bands and stays matched elsewhere", detail);
}

// ---- criterion 8: inverse identities ---------------------------------------
void criterion_inverse_identities() {
  std::mt19937 rng(97);
  std::uniform_real_distribution<double> f_dist(5e8, 2e10);
  std::uniform_real_distribution<double> eps_dist(1.0, 11.0);
  bool freq_ok = true;
  for (int i = 0; i < 500; ++i) {
    const double f = f_dist(rng), e = eps_dist(rng);
    const double l = slot_length_for_frequency_mm(Frequency(f), e);
    freq_ok = freq_ok && std::abs(notch_frequency_from_length(l, e).hz() - f) <= 1e-12 * f;
  }

  const SubstrateSpec fr4 = fr4_substrate();
  std::uniform_real_distribution<double> logw(std::log(0.02), std::log(150.0));
  bool imp_ok = true;
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double w = std::exp(logw(rng));
    const double z = microstrip_impedance(w, fr4);
    const double w_back = microstrip_width_for_impedance(z, fr4);
    const double err = std::abs(microstrip_impedance(w_back, fr4) - z);
    worst = std::max(worst, err);
    imp_ok = imp_ok && err <= 0.01;
  }
  char detail[128];
  std::snprintf(detail, sizeof detail, "worst impedance round-trip error %.2e ohm", worst);
  report(8, freq_ok && imp_ok, "frequency/length and impedance/width round trips hold", detail);
}

// ---- criterion 9: geometry build, validation, export ----------------------
void criterion_geometry(const fs::path& golden_svg) {
  bool build_ok = false, golden_ok = false, json_ok = false, violation_ok = false;
  std::string detail;
  try {
    const DesignParams params = default_design();
    const AntennaGeometry geom = build_geometry(params);
    build_ok = validate_geometry(geom).empty();

    const std::string svg = export_svg(geom);
    const std::string golden = read_file(golden_svg);
    golden_ok = !golden.empty() && svg == golden;
    if (golden.empty()) detail = "golden file missing: " + golden_svg.string();

    json_ok = geometry_equal(geom, import_json_text(export_json_text(geom)), 1e-9);

    DesignParams broken = params;
    broken.patch_radius_mm = 0.1;
    try {
      build_geometry(broken);
    } catch (const GeometryError& e) {
      violation_ok = std::string(e.what()).find("slot outside patch") != std::string::npos;
    }
  } catch (const std::exception& e) {
    detail = e.what();
  }
  if (detail.empty())
    detail = std::string("build=") + (build_ok ? "ok" : "bad") + " golden=" +
             (golden_ok ? "ok" : "bad") + " json=" + (json_ok ? "ok" : "bad") + " violations=" +
             (violation_ok ? "ok" : "bad");
  report(9, build_ok && golden_ok && json_ok && violation_ok,
         "reference layout builds, validates, exports and round-trips", detail);
}

// ---- criterion 10: deterministic command outputs ---------------------------
void criterion_determinism(const std::string& cli, const fs::path& scratch) {
  auto run = [&](const std::string& sub, const fs::path& out) {
    const std::string cmd =
        "\"" + cli + "\" --out \"" + out.string() + "\" " + sub + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };

  const fs::path a1 = scratch / "analyze1", a2 = scratch / "analyze2";
  const fs::path o1 = scratch / "opt1", o2 = scratch / "opt2";
  bool ran = run("analyze", a1) && run("analyze", a2) && run("optimize", o1) &&
             run("optimize", o2);

  bool identical = false;
  if (ran) {
    identical = read_file(a1 / "trace.csv") == read_file(a2 / "trace.csv") &&
                !read_file(a1 / "trace.csv").empty() &&
                read_file(a1 / "band_report.json") == read_file(a2 / "band_report.json") &&
                read_file(o1 / "tune_report.json") == read_file(o2 / "tune_report.json") &&
                !read_file(o1 / "tune_report.json").empty();
  }
  report(10, ran && identical, "repeated analyze/optimize runs are byte-identical",
         ran ? (identical ? "trace.csv, band_report.json, tune_report.json all match"
                          : "outputs differ")
             : "command invocation failed");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <cli-binary> <golden-svg> [scratch-dir]\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path golden_svg = argv[2];
  const fs::path scratch = argc > 3 ? fs::path(argv[3]) : fs::path("acceptance_scratch");
  std::error_code ec;
  fs::remove_all(scratch, ec);
  fs::create_directories(scratch, ec);

  criterion_slot_synthesis();
  criterion_permittivity();
  criterion_taper_exponent();
  criterion_reflection_oracle();
  criterion_passivity_reciprocity();
  criterion_quarter_wave();
  criterion_end_to_end();
  criterion_inverse_identities();
  criterion_geometry(golden_svg);
  criterion_determinism(cli, scratch);

  if (g_failures == 0)
    std::printf("all 10 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
