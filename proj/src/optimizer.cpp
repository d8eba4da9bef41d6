// SPDX-License-Identifier: Apache-2.0

#include "uwbnotch/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uwbnotch {

namespace {

// Vertex of the parabola through three samples; falls back to x1 when the
// samples are degenerate or the vertex escapes the bracket.
double parabolic_peak(double x0, double v0, double x1, double v1, double x2, double v2) {
  if (!std::isfinite(v0) || !std::isfinite(v1) || !std::isfinite(v2)) return x1;
  const double d01 = x1 - x0, d12 = x1 - x2;
  const double num = d01 * d01 * (v1 - v2) - d12 * d12 * (v1 - v0);
  const double den = d01 * (v1 - v2) - d12 * (v1 - v0);
  if (std::abs(den) < 1e-30) return x1;
  const double x = x1 - 0.5 * num / den;
  if (x < std::min(x0, x2) || x > std::max(x0, x2)) return x1;
  return x;
}

struct Pairing {
  double objective = 0.0;
  std::vector<double> achieved;  // one per target, 0 when no centre exists
};

// Each target takes its nearest centre; every target left without a centre
// costs the missing-notch penalty.
Pairing pair_targets(const std::vector<double>& targets, const std::vector<double>& centers) {
  Pairing out;
  out.achieved.assign(targets.size(), 0.0);
  const double kMissingPenalty = 1e3;
  if (centers.empty()) {
    out.objective = kMissingPenalty * static_cast<double>(targets.size());
    return out;
  }
  for (size_t i = 0; i < targets.size(); ++i) {
    double best = centers.front();
    for (double c : centers)
      if (std::abs(c - targets[i]) < std::abs(best - targets[i])) best = c;
    out.achieved[i] = best;
    const double miss_ghz = (best - targets[i]) / 1e9;
    out.objective += miss_ghz * miss_ghz;
  }
  if (centers.size() < targets.size())
    out.objective += kMissingPenalty * static_cast<double>(targets.size() - centers.size());
  return out;
}

}  // namespace

std::vector<double> notch_centers_hz(const S11Trace& trace, const ServiceBand& band) {
  if (trace.size() == 0) return {};
  if (band.f_lo.hz() < trace.freq_hz[0] || band.f_hi.hz() > trace.freq_hz[trace.size() - 1])
    throw CoverageError("trace does not span band '" + band.name + "'");

  const Eigen::ArrayXd vswr = trace.vswr();
  std::vector<double> centers;

  Eigen::Index run_start = -1;
  auto flush_run = [&](Eigen::Index last) {
    if (run_start < 0) return;
    Eigen::Index peak = run_start;
    for (Eigen::Index i = run_start; i <= last; ++i)
      if (vswr[i] > vswr[peak]) peak = i;
    double center = trace.freq_hz[peak];
    if (peak > 0 && peak + 1 < trace.size())
      center = parabolic_peak(trace.freq_hz[peak - 1], vswr[peak - 1], trace.freq_hz[peak],
                              vswr[peak], trace.freq_hz[peak + 1], vswr[peak + 1]);
    centers.push_back(center);
    run_start = -1;
  };

  for (Eigen::Index i = 0; i < trace.size(); ++i) {
    const bool hot = band.contains(trace.freq_hz[i]) && vswr[i] >= 2.0;
    if (hot && run_start < 0) run_start = i;
    if (!hot) flush_run(i - 1);
  }
  flush_run(trace.size() - 1);
  return centers;
}

void TuneProblem::validate() const {
  const size_t n = initial_lengths_mm.size();
  if (n == 0) throw std::invalid_argument("tune problem has no lengths");
  if (targets_hz.size() != n)
    throw std::invalid_argument("tune problem needs one target per slot length");
  if (bounds_mm.size() != n) throw std::invalid_argument("tune problem needs one bound per length");
  for (size_t i = 0; i < n; ++i) {
    if (!(bounds_mm[i].first > 0.0 && bounds_mm[i].second > bounds_mm[i].first))
      throw std::invalid_argument("tune bounds must satisfy 0 < lo < hi");
    if (initial_lengths_mm[i] < bounds_mm[i].first || initial_lengths_mm[i] > bounds_mm[i].second)
      throw std::invalid_argument("initial length " + std::to_string(i) + " outside its bounds");
  }
  for (size_t i = 1; i < n; ++i)
    if (!(targets_hz[i] > targets_hz[i - 1]))
      throw std::invalid_argument("targets must be strictly increasing");
  if (sweep_hz.size() < 3) throw std::invalid_argument("tune sweep grid too small");
  const double margin = 0.5e9;
  if (sweep_hz[0] > targets_hz.front() - margin ||
      sweep_hz[sweep_hz.size() - 1] < targets_hz.back() + margin)
    throw std::invalid_argument("sweep must span all targets with >= 0.5 GHz margin");
  if (!build_network) throw std::invalid_argument("tune problem needs a network builder");
  if (!(tolerance_hz > 0.0)) throw std::invalid_argument("tolerance_hz must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

TuneResult tune(const TuneProblem& problem) {
  problem.validate();
  const size_t n = problem.initial_lengths_mm.size();

  auto clamp = [&](std::vector<double> x) {
    for (size_t i = 0; i < n; ++i)
      x[i] = std::clamp(x[i], problem.bounds_mm[i].first, problem.bounds_mm[i].second);
    return x;
  };

  struct Vertex {
    std::vector<double> x;
    double value = 0.0;
    std::vector<double> achieved;
  };

  auto evaluate = [&](std::vector<double> x) {
    Vertex v;
    v.x = clamp(std::move(x));
    const S11Trace trace = sweep(problem.build_network(v.x), problem.z_ref_ohm,
                                 problem.z_load_ohm, problem.sweep_hz);
    const Pairing p = pair_targets(problem.targets_hz, notch_centers_hz(trace, problem.band));
    v.value = p.objective;
    v.achieved = p.achieved;
    return v;
  };

  auto within_tolerance = [&](const Vertex& v) {
    for (size_t i = 0; i < n; ++i) {
      if (v.achieved[i] == 0.0) return false;
      if (std::abs(v.achieved[i] - problem.targets_hz[i]) > problem.tolerance_hz) return false;
    }
    return true;
  };

  auto make_result = [&](const Vertex& v, int iterations, bool converged) {
    return TuneResult{v.x, v.achieved, v.value, iterations, converged};
  };

  // Fixed initial simplex: 2% edge along each coordinate, no randomness.
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back(evaluate(problem.initial_lengths_mm));
  if (within_tolerance(simplex[0])) return make_result(simplex[0], 0, true);
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> x = problem.initial_lengths_mm;
    x[i] *= 1.02;
    simplex.push_back(evaluate(std::move(x)));
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
  };
  order();
  if (within_tolerance(simplex[0])) return make_result(simplex[0], 0, true);

  int iter = 0;
  while (iter < problem.max_iterations) {
    ++iter;

    std::vector<double> centroid(n, 0.0);
    for (size_t v = 0; v < n; ++v)
      for (size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
    const Vertex& worst = simplex[n];

    auto along = [&](double coeff) {
      std::vector<double> x(n);
      for (size_t i = 0; i < n; ++i) x[i] = centroid[i] + coeff * (centroid[i] - worst.x[i]);
      return x;
    };

    Vertex reflected = evaluate(along(1.0));
    if (reflected.value < simplex[0].value) {
      Vertex expanded = evaluate(along(2.0));
      simplex[n] = expanded.value < reflected.value ? std::move(expanded) : std::move(reflected);
    } else if (reflected.value < simplex[n - 1].value) {
      simplex[n] = std::move(reflected);
    } else {
      const bool outside = reflected.value < worst.value;
      Vertex contracted = evaluate(along(outside ? 0.5 : -0.5));
      if (contracted.value < std::min(reflected.value, worst.value)) {
        simplex[n] = std::move(contracted);
      } else {
        // Shrink toward the best vertex.
        for (size_t v = 1; v <= n; ++v) {
          std::vector<double> x(n);
          for (size_t i = 0; i < n; ++i) x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
          simplex[v] = evaluate(std::move(x));
        }
      }
    }
    order();
    if (within_tolerance(simplex[0])) return make_result(simplex[0], iter, true);
  }

  throw NoConvergenceError(make_result(simplex[0], iter, false));
}

}  // namespace uwbnotch
