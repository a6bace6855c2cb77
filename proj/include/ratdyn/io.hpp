#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ratdyn/equilibria.hpp"
#include "ratdyn/lyapunov.hpp"
#include "ratdyn/map.hpp"
#include "ratdyn/period_two.hpp"
#include "ratdyn/scan.hpp"

namespace ratdyn {

using Json = nlohmann::ordered_json;

// Numbers in every emitted file carry 15 significant digits.
std::string format_number(double x);
// "a+bi" for humans; never parsed back.
std::string format_complex(Complex z);
double round15(double x);

Json to_json(Complex z);
Complex complex_from_json(const Json& j, std::string_view what);

Json to_json(const Params& p);
Json to_json(const OrbitState& s);
Json to_json(const ToleranceConfig& cfg);
Json to_json(const OrbitOutcome& o);
Json to_json(const CharQuadratic& q);
Json to_json(const EquilibriumReport& r);
Json to_json(const ConditionCheck& c);
Json to_json(const TwoCycle& c);
Json to_json(const TwoCycleStability& s);
Json to_json(const CycleVerification& v);
Json to_json(const LyapunovEstimate& e);
Json to_json(const ExtremumResult& r);
Json to_json(const PeriodHarnessReport& r);
Json to_json(const ChaosHarnessReport& r);

// Inverses for the report types; unknown or missing keys throw InvalidArgument.
OrbitOutcome outcome_from_json(const Json& j);
CharQuadratic char_quadratic_from_json(const Json& j);
EquilibriumReport equilibrium_report_from_json(const Json& j);
ConditionCheck condition_check_from_json(const Json& j);
TwoCycleStability two_cycle_stability_from_json(const Json& j);
LyapunovEstimate lyapunov_estimate_from_json(const Json& j);
ExtremumResult extremum_result_from_json(const Json& j);
ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig base = {});

enum class OutputFormat { csv, json, pgm };
std::string_view format_name(OutputFormat f);
OutputFormat format_from_name(std::string_view name);

Objective objective_from_name(std::string_view name);
GridTarget target_from_name(std::string_view name);
std::string_view target_name(GridTarget t);
SlicePolicy slice_from_name(std::string_view name);
std::string_view slice_name(SlicePolicy s);

struct ScanSection {
  std::optional<Objective> objective;
  std::optional<double> alpha_radius;
  std::optional<double> beta_radius;
  long budget = 100000;
};

struct BasinSection {
  ScanGrid grid;
  BasinOptions options;
};

struct ConjectureSection {
  long n_samples = 1000;
  double param_box = 3.0;
  long n_steps = kDefaultLyapunovSteps;
  long chaos_samples = 0;  // extra sampled parameters beyond the reference rows
};

struct LyapunovSection {
  long n_steps = kDefaultLyapunovSteps;
  std::string series_path;
};

struct RunConfig {
  std::optional<Complex> alpha;
  std::optional<Complex> beta;
  std::optional<OrbitState> initial;
  ToleranceConfig tolerances;
  std::uint64_t seed = 0;
  std::string output_path;
  std::optional<OutputFormat> output_format;
  ScanSection scan;
  BasinSection basin;
  ConjectureSection conjectures;
  LyapunovSection lyapunov;

  // Throws InvalidArgument naming the missing key.
  Params require_params() const;
};

// Unknown keys are rejected at every level.
RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::string& path);

void write_basin_pgm(std::ostream& out, const BasinRaster& raster);
void write_basin_csv(std::ostream& out, const BasinRaster& raster);
Json basin_legend(const BasinRaster& raster);
Json to_json(const BasinRaster& raster);

}  // namespace ratdyn
