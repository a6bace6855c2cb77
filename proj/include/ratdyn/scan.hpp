#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "ratdyn/lyapunov.hpp"
#include "ratdyn/map.hpp"

namespace ratdyn {

enum class GridTarget { initial_conditions, alpha_plane, beta_plane };

struct ScanGrid {
  Complex center;
  double half_width = 1.0;
  int resolution = 64;
  GridTarget target = GridTarget::initial_conditions;

  void validate() const;
  // Row 0 is the top edge (largest imaginary part), column 0 the left edge.
  Complex cell(int row, int col) const;
};

enum class SlicePolicy { z_prev_fixed, z_curr_fixed, diagonal };

struct BasinOptions {
  SlicePolicy slice = SlicePolicy::diagonal;
  // Value of the coordinate held fixed; also the diagonal start for
  // parameter-plane rasters.
  Complex partner{0.1, 0.1};
  // Tolerance for matching limits and cycles against the known attractors.
  double match_eps = 1e-5;
};

struct BasinRaster {
  ScanGrid grid;
  BasinOptions options;
  Params params;
  ToleranceConfig config;
  std::vector<OrbitLabel> labels;  // row-major, resolution x resolution

  OrbitLabel at(int row, int col) const {
    return labels[static_cast<std::size_t>(row) * grid.resolution + col];
  }
};

BasinRaster basin_raster(const Params& params, const ScanGrid& grid, const ToleranceConfig& cfg,
                         const BasinOptions& options = {});

enum class Objective { stability_margin_z1, stability_margin_z2, saddle_margin };

std::string_view objective_name(Objective o);

// Larger-is-better for saddle_margin (over both branches); smaller for the others.
double evaluate_objective(Objective o, const Params& params);

struct SearchDomain {
  double alpha_radius = 1.0;  // |alpha| < alpha_radius
  double beta_radius = 1.0;
};

struct ExtremumResult {
  Objective objective = Objective::stability_margin_z1;
  double best_value = 0.0;
  Params best_params;
  long evaluations = 0;
  std::uint64_t seed = 0;
  double best_random_start = 0.0;
};

// Seeded random multi-start followed by shrinking-step coordinate descent on
// the four real coordinates of (alpha, beta).
ExtremumResult find_extremum(Objective objective, const SearchDomain& domain, long budget,
                             std::uint64_t seed);

struct ConditionCheck {
  bool beta_gt = false;     // |beta| > |1 + 4 alpha|
  double beta_modulus = 0;
  double one_plus_4alpha_modulus = 0;
};

ConditionCheck condition_check(const Params& params);

struct PeriodSample {
  Params params;
  OrbitState initial;
  int period = 0;
  std::vector<Complex> cycle;
};

struct PeriodHarnessReport {
  long n_samples = 0;
  double param_box = 0;
  std::uint64_t seed = 0;
  std::map<std::string, long> outcome_counts;  // by outcome_name
  std::map<int, long> period_counts;           // every detected period
  std::vector<PeriodSample> offending;         // period >= 3

  long higher_period_total() const;
};

// Samples alpha, beta and the initial pair uniformly from [-box, box]^2 each.
PeriodHarnessReport conjecture_p3_harness(long n_samples, double param_box,
                                          const ToleranceConfig& cfg, std::uint64_t seed);

struct ChaosSample {
  Params params;
  OrbitState initial;
  ConditionCheck condition;
  bool survived = false;
  double lambda_max = 0.0;
  bool converged = false;
  bool chaotic = false;
  std::string outcome;
};

struct ChaosHarnessReport {
  long n_samples = 0;
  std::uint64_t seed = 0;
  double threshold = kChaosThreshold;
  // [beta_lt][chaotic], beta_lt meaning |beta| < |1 + 4 alpha|
  long table[2][2] = {{0, 0}, {0, 0}};
  long died = 0;
  std::vector<ChaosSample> samples;
  std::vector<ChaosSample> violations;  // chaotic with |beta| >= |1 + 4 alpha|
};

// Initial pairs are drawn from the unit bidisk.
ChaosHarnessReport conjecture_chaos_harness(const std::vector<Params>& params,
                                            const ToleranceConfig& cfg, std::uint64_t seed,
                                            long n_steps = kDefaultLyapunovSteps,
                                            double threshold = kChaosThreshold);

ChaosHarnessReport conjecture_chaos_harness(long n_samples, double param_box,
                                            const ToleranceConfig& cfg, std::uint64_t seed,
                                            long n_steps = kDefaultLyapunovSteps,
                                            double threshold = kChaosThreshold);

}  // namespace ratdyn
