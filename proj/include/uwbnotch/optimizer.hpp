// SPDX-License-Identifier: Apache-2.0
//
// Deterministic tuning of slot resonator lengths: notch-centre extraction
// from a swept trace and a fixed-simplex derivative-free search driving the
// achieved centres onto their targets.

#ifndef UWBNOTCH_OPTIMIZER_HPP
#define UWBNOTCH_OPTIMIZER_HPP

#include <functional>
#include <utility>
#include <vector>

#include "uwbnotch/circuit.hpp"
#include "uwbnotch/notch.hpp"

namespace uwbnotch {

/// Centre frequencies of the notches in a trace: one per maximal VSWR >= 2
/// run inside the band, refined by quadratic interpolation over the three
/// grid points nearest the run's peak. Sorted ascending; empty if no notch.
std::vector<double> notch_centers_hz(const S11Trace& trace, const ServiceBand& band);

struct TuneProblem {
  std::vector<double> initial_lengths_mm;
  std::vector<double> targets_hz;  ///< strictly increasing
  std::vector<std::pair<double, double>> bounds_mm;
  Eigen::ArrayXd sweep_hz;  ///< must span all targets with >= 0.5 GHz margin
  double tolerance_hz = 1e7;
  int max_iterations = 500;

  /// Builds the candidate network for a set of slot lengths.
  std::function<NetworkElement(const std::vector<double>&)> build_network;
  double z_ref_ohm = 50.0;
  double z_load_ohm = 50.0;

  void validate() const;
};

struct TuneResult {
  std::vector<double> tuned_lengths_mm;
  std::vector<double> achieved_centers_hz;  ///< one per target; 0 when missing
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Tuning ran out of iterations; carries the best result found.
class NoConvergenceError : public std::runtime_error {
 public:
  explicit NoConvergenceError(TuneResult best)
      : std::runtime_error("tuning did not converge within the iteration budget"),
        best_(std::move(best)) {}
  const TuneResult& best() const { return best_; }

 private:
  TuneResult best_;
};

/// Derivative-free simplex search from the initial lengths with a fixed
/// initial simplex (2% edge per coordinate, no randomness). Terminates when
/// every |achieved - target| <= tolerance_hz; throws NoConvergenceError with
/// the best-so-far result after max_iterations. Deterministic across runs.
TuneResult tune(const TuneProblem& problem);

}  // namespace uwbnotch

#endif  // UWBNOTCH_OPTIMIZER_HPP
