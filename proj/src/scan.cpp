#include "ratdyn/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ratdyn/equilibria.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/parallel.hpp"
#include "ratdyn/random.hpp"

namespace ratdyn {

void ScanGrid::validate() const {
  if (resolution < 2) throw InvalidArgument("grid: resolution must be >= 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw InvalidArgument("grid: half_width must be > 0");
  if (!is_finite(center)) throw InvalidArgument("grid: center must be finite");
}

Complex ScanGrid::cell(int row, int col) const {
  const double span = 2.0 * half_width / static_cast<double>(resolution - 1);
  return {center.real() - half_width + span * col, center.imag() + half_width - span * row};
}

BasinRaster basin_raster(const Params& params, const ScanGrid& grid, const ToleranceConfig& cfg,
                         const BasinOptions& options) {
  grid.validate();
  cfg.validate();
  BasinRaster raster{grid, options, params, cfg, {}};
  const auto n = static_cast<std::size_t>(grid.resolution);
  raster.labels.assign(n * n, OrbitLabel::undecided);

  const KnownAttractors shared = grid.target == GridTarget::initial_conditions
                                     ? known_attractors(params)
                                     : KnownAttractors{};

  parallel_for(n, [&](std::size_t row) {
    for (std::size_t col = 0; col < n; ++col) {
      const Complex c = grid.cell(static_cast<int>(row), static_cast<int>(col));
      Params p = params;
      OrbitState start{options.partner, options.partner, 0};
      switch (grid.target) {
        case GridTarget::initial_conditions:
          switch (options.slice) {
            case SlicePolicy::z_prev_fixed: start = {options.partner, c, 0}; break;
            case SlicePolicy::z_curr_fixed: start = {c, options.partner, 0}; break;
            case SlicePolicy::diagonal: start = {c, c, 0}; break;
          }
          break;
        case GridTarget::alpha_plane: p.alpha = c; break;
        case GridTarget::beta_plane: p.beta = c; break;
      }
      const KnownAttractors known =
          grid.target == GridTarget::initial_conditions ? shared : known_attractors(p);
      Orbit orbit = iterate(p, start, cfg);
      raster.labels[row * n + col] = classify_orbit(orbit, known, options.match_eps).label;
    }
  });
  return raster;
}

std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::stability_margin_z1: return "stability_margin_z1";
    case Objective::stability_margin_z2: return "stability_margin_z2";
    case Objective::saddle_margin: return "saddle_margin";
  }
  return "stability_margin_z1";
}

double evaluate_objective(Objective o, const Params& params) {
  switch (o) {
    case Objective::stability_margin_z1: return stability_margin(params, Branch::minus);
    case Objective::stability_margin_z2: return stability_margin(params, Branch::plus);
    case Objective::saddle_margin:
      return std::max(saddle_margin(params, Branch::minus), saddle_margin(params, Branch::plus));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

using Point = std::array<double, 4>;  // Re a, Im a, Re b, Im b

Params to_params(const Point& x) { return {{x[0], x[1]}, {x[2], x[3]}}; }

struct Candidate {
  Point x;
  double score;  // minimized
};

}  // namespace

ExtremumResult find_extremum(Objective objective, const SearchDomain& domain, long budget,
                             std::uint64_t seed) {
  if (budget < 100) throw InvalidArgument("find_extremum: budget must be >= 100");
  if (!(domain.alpha_radius > 0.0) || !(domain.beta_radius > 0.0))
    throw InvalidArgument("find_extremum: search radii must be > 0");

  const double sense = objective == Objective::saddle_margin ? -1.0 : 1.0;
  long evals = 0;
  auto score = [&](const Point& x) {
    ++evals;
    try {
      double v = evaluate_objective(objective, to_params(x));
      return std::isfinite(v) ? sense * v : std::numeric_limits<double>::infinity();
    } catch (const DegenerateError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  auto feasible = [&](const Point& x) {
    return std::hypot(x[0], x[1]) < domain.alpha_radius &&
           std::hypot(x[2], x[3]) < domain.beta_radius;
  };

  Rng rng(seed);
  constexpr std::size_t kStarts = 8;
  const long n_random = budget / 2;
  std::vector<Candidate> best;
  for (long i = 0; i < n_random; ++i) {
    Complex a = uniform_disk(rng, domain.alpha_radius);
    Complex b = uniform_disk(rng, domain.beta_radius);
    Point x{a.real(), a.imag(), b.real(), b.imag()};
    double s = score(x);
    if (!std::isfinite(s)) continue;
    best.push_back({x, s});
    std::stable_sort(best.begin(), best.end(),
                     [](const Candidate& l, const Candidate& r) { return l.score < r.score; });
    if (best.size() > kStarts) best.pop_back();
  }

  ExtremumResult result;
  result.objective = objective;
  result.seed = seed;
  if (best.empty()) {
    result.evaluations = evals;
    result.best_value = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  result.best_random_start = sense * best.front().score;

  Candidate overall = best.front();
  const long per_start = (budget - evals) / static_cast<long>(best.size());
  for (const Candidate& start : best) {
    Candidate cur = start;
    const long stop_at = evals + per_start;
    Point steps{0.05 * domain.alpha_radius, 0.05 * domain.alpha_radius,
                0.05 * domain.beta_radius, 0.05 * domain.beta_radius};
    const double min_step = 1e-13 * std::max(domain.alpha_radius, domain.beta_radius);
    while (evals < stop_at && *std::max_element(steps.begin(), steps.end()) > min_step) {
      bool improved = false;
      for (std::size_t i = 0; i < 4 && evals < stop_at; ++i) {
        for (double dir : {1.0, -1.0}) {
          Point trial = cur.x;
          trial[i] += dir * steps[i];
          if (!feasible(trial)) continue;
          double s = score(trial);
          if (s < cur.score) {
            cur = {trial, s};
            improved = true;
            break;
          }
          if (evals >= stop_at) break;
        }
      }
      if (!improved)
        for (double& s : steps) s *= 0.5;
    }
    if (cur.score < overall.score) overall = cur;
  }

  result.best_params = to_params(overall.x);
  result.best_value = evaluate_objective(objective, result.best_params);
  result.evaluations = evals;
  return result;
}

ConditionCheck condition_check(const Params& params) {
  ConditionCheck c;
  c.beta_modulus = std::abs(params.beta);
  c.one_plus_4alpha_modulus = std::abs(1.0 + 4.0 * params.alpha);
  c.beta_gt = c.beta_modulus > c.one_plus_4alpha_modulus;
  return c;
}

long PeriodHarnessReport::higher_period_total() const {
  long total = 0;
  for (const auto& [p, n] : period_counts)
    if (p >= 3) total += n;
  return total;
}

PeriodHarnessReport conjecture_p3_harness(long n_samples, double param_box,
                                          const ToleranceConfig& cfg, std::uint64_t seed) {
  if (n_samples < 1) throw InvalidArgument("conjecture harness: n_samples must be >= 1");
  if (!(param_box > 0.0)) throw InvalidArgument("conjecture harness: param_box must be > 0");
  cfg.validate();

  Rng rng(seed);
  std::vector<std::pair<Params, OrbitState>> inputs(static_cast<std::size_t>(n_samples));
  for (auto& [p, s] : inputs) {
    p.alpha = uniform_box(rng, param_box);
    p.beta = uniform_box(rng, param_box);
    s.z_prev = uniform_box(rng, param_box);
    s.z_curr = uniform_box(rng, param_box);
  }

  std::vector<OrbitOutcome> outcomes(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    outcomes[i] = iterate(inputs[i].first, inputs[i].second, cfg).outcome;
  });

  PeriodHarnessReport rep;
  rep.n_samples = n_samples;
  rep.param_box = param_box;
  rep.seed = seed;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    ++rep.outcome_counts[std::string(outcome_name(outcomes[i]))];
    if (const auto* pc = std::get_if<outcome::PeriodicCycle>(&outcomes[i])) {
      ++rep.period_counts[pc->period];
      if (pc->period >= 3)
        rep.offending.push_back({inputs[i].first, inputs[i].second, pc->period, pc->cycle});
    }
  }
  return rep;
}

ChaosHarnessReport conjecture_chaos_harness(const std::vector<Params>& params,
                                            const ToleranceConfig& cfg, std::uint64_t seed,
                                            long n_steps, double threshold) {
  cfg.validate();
  Rng rng(seed);
  ChaosHarnessReport rep;
  rep.n_samples = static_cast<long>(params.size());
  rep.seed = seed;
  rep.threshold = threshold;
  rep.samples.resize(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    rep.samples[i].params = params[i];
    rep.samples[i].initial = {uniform_disk(rng, 1.0), uniform_disk(rng, 1.0), 0};
    rep.samples[i].condition = condition_check(params[i]);
  }

  parallel_for(params.size(), [&](std::size_t i) {
    ChaosSample& s = rep.samples[i];
    try {
      LyapunovEstimate est = lyapunov_max(s.params, s.initial, cfg, n_steps);
      s.survived = true;
      s.lambda_max = est.lambda_max;
      s.converged = est.converged;
      s.outcome = std::string(outcome_name(est.orbit_outcome));
      s.chaotic = est.converged && classify_chaotic(est, threshold);
    } catch (const OrbitDiedError&) {
      s.outcome = "died";
    } catch (const NonFiniteError&) {
      s.outcome = "non-finite";
    }
  });

  for (const ChaosSample& s : rep.samples) {
    if (!s.survived) {
      ++rep.died;
      continue;
    }
    const bool beta_lt = s.condition.beta_modulus < s.condition.one_plus_4alpha_modulus;
    ++rep.table[beta_lt ? 1 : 0][s.chaotic ? 1 : 0];
    if (s.chaotic && !beta_lt) rep.violations.push_back(s);
  }
  return rep;
}

ChaosHarnessReport conjecture_chaos_harness(long n_samples, double param_box,
                                            const ToleranceConfig& cfg, std::uint64_t seed,
                                            long n_steps, double threshold) {
  if (n_samples < 1) throw InvalidArgument("conjecture harness: n_samples must be >= 1");
  if (!(param_box > 0.0)) throw InvalidArgument("conjecture harness: param_box must be > 0");
  Rng rng(seed);
  std::vector<Params> params(static_cast<std::size_t>(n_samples));
  for (Params& p : params) p = {uniform_box(rng, param_box), uniform_box(rng, param_box)};
  ChaosHarnessReport rep = conjecture_chaos_harness(params, cfg, rng(), n_steps, threshold);
  rep.seed = seed;
  return rep;
}

}  // namespace ratdyn
