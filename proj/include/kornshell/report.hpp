#pragma once

// Sweep results shared by the constant and Ansatz sweeps.
//
// JSON layout:
//   { "report":   { kind, config, series: { name: { points, fit } } },
//     "metadata": { timestamp, seconds per point } }
// "report" is a pure function of the configuration and seed; everything
// wall-clock dependent lives under "metadata".

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kornshell/korn_solver.hpp"

namespace kornshell {

struct SweepPoint {
  double h = 0;
  double value = 0;
  int n_t = 0, n_theta = 0, n_z = 0;
  double seconds = 0;
  std::optional<double> slope_to_date;   // fit over this and earlier points (>= 3)
  std::string series;
  nlohmann::json details = nlohmann::json::object();
};

struct SweepReport {
  std::string kind;
  nlohmann::json config = nlohmann::json::object();
  std::vector<SweepPoint> points;
  std::map<std::string, ScalingFit> fits;
  std::string timestamp;

  /// Appends a point, filling slope_to_date from the earlier points of the
  /// same series.
  void add(SweepPoint p);
  /// Fits every series with >= 3 points.
  void refit();

  std::vector<double> values(const std::string& series) const;
  std::vector<double> hs(const std::string& series) const;

  nlohmann::json report_json() const;
  nlohmann::json to_json() const;   // report + metadata
  /// report_json().dump(2): the byte-stable part.
  std::string deterministic_payload() const;

  /// Columns: h, value, n_t, n_theta, n_z, seconds, slope_to_date, series.
  std::string to_csv() const;
  void write_json(const std::string& path) const;
  void write_csv(const std::string& path) const;
};

/// ISO-8601 UTC time of the call.
std::string utc_timestamp();

/// C2 or the interpolation constant (quotient "second" or "interp") over a
/// list of thicknesses, run one h at a time. Series: "constant", "lambda",
/// and for "second" also "ansatz_candidate" (h <x,Gx>/<x,(M+E)x> for the
/// default-profile Ansatz, skipped when the grid cannot resolve it).
SweepReport sweep_constant(const SurfacePatch& patch, const std::vector<double>& hs,
                           const GridPolicy& policy, const SolverSettings& settings,
                           const std::string& quotient);

}  // namespace kornshell
