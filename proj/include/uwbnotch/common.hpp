// SPDX-License-Identifier: Apache-2.0
#ifndef UWBNOTCH_COMMON_HPP
#define UWBNOTCH_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwbnotch {

/// Speed of light in vacuum, exact by SI definition.
inline constexpr double kSpeedOfLightMps = 299792458.0;
inline constexpr double kSpeedOfLightMmps = 299792458.0e3;

/// Free-space wave impedance, ohms.
inline constexpr double kFreeSpaceImpedanceOhm = 376.730313668;

/// A strictly positive frequency in hertz.
class Frequency {
 public:
  explicit Frequency(double hertz) : hz_(hertz) {
    if (!(std::isfinite(hertz) && hertz > 0.0))
      throw std::invalid_argument("Frequency must be finite and positive, got " +
                                  std::to_string(hertz));
  }

  static Frequency hertz(double hz) { return Frequency(hz); }
  static Frequency gigahertz(double ghz) { return Frequency(ghz * 1e9); }

  double hz() const { return hz_; }
  double ghz() const { return hz_ / 1e9; }

  friend bool operator==(const Frequency& a, const Frequency& b) { return a.hz_ == b.hz_; }
  friend bool operator<(const Frequency& a, const Frequency& b) { return a.hz_ < b.hz_; }
  friend bool operator>(const Frequency& a, const Frequency& b) { return a.hz_ > b.hz_; }
  friend bool operator<=(const Frequency& a, const Frequency& b) { return a.hz_ <= b.hz_; }
  friend bool operator>=(const Frequency& a, const Frequency& b) { return a.hz_ >= b.hz_; }

 private:
  double hz_;
};

/// Geometry validation failure; carries every violated constraint.
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "geometry validation failed:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

/// Schema violation in a JSON document; carries a JSON-path-like location.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class SingularNetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed |S11| exceeded 1 beyond tolerance; signals a modeling bug.
class PassivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trace does not span a requested frequency band.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uwbnotch

#endif  // UWBNOTCH_COMMON_HPP
