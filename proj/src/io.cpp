#include "ratdyn/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <ostream>

#include "ratdyn/errors.hpp"

namespace ratdyn {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_number(z.real());
  out += (std::signbit(z.imag()) ? "-" : "+");
  out += format_number(std::abs(z.imag()));
  out += "i";
  return out;
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

namespace {

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                std::string_view what) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InvalidArgument(std::string(what) + ": unknown key '" + key + "'");
  }
}

const Json& field(const Json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

double number_from(const Json& j, std::string_view what) {
  if (j.is_null()) return std::nan("");
  if (!j.is_number()) throw InvalidArgument(std::string(what) + ": expected a number");
  return j.get<double>();
}

long integer_from(const Json& j, std::string_view what) {
  if (!j.is_number_integer()) throw InvalidArgument(std::string(what) + ": expected an integer");
  return j.get<long>();
}

double positive_from(const Json& j, std::string_view what) {
  double x = number_from(j, what);
  if (!(x > 0.0) || !std::isfinite(x))
    throw InvalidArgument(std::string(what) + ": expected a finite positive number");
  return x;
}

Json moduli(std::pair<double, double> m) { return Json::array({num(m.first), num(m.second)}); }

std::pair<double, double> moduli_from(const Json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument(std::string(what) + ": expected [a, b]");
  return {number_from(j[0], what), number_from(j[1], what)};
}

StabilityClass stability_from(const Json& j) {
  const std::string s = j.get<std::string>();
  for (auto c : {StabilityClass::locally_asymptotically_stable, StabilityClass::saddle,
                 StabilityClass::unstable, StabilityClass::inconclusive})
    if (stability_name(c) == s) return c;
  throw InvalidArgument("unknown stability class '" + s + "'");
}

}  // namespace

Json to_json(Complex z) { return Json::array({num(z.real()), num(z.imag())}); }

Complex complex_from_json(const Json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidArgument(std::string(what) + ": complex numbers are encoded as [re, im]");
  Complex z{j[0].get<double>(), j[1].get<double>()};
  if (!is_finite(z)) throw InvalidArgument(std::string(what) + ": must be finite");
  return z;
}

Json to_json(const Params& p) { return {{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}}; }

Json to_json(const OrbitState& s) {
  return {{"z_prev", to_json(s.z_prev)}, {"z_curr", to_json(s.z_curr)}, {"n", s.n}};
}

Json to_json(const ToleranceConfig& c) {
  return {{"eps_singular", num(c.eps_singular)},
          {"radius_unbounded", num(c.radius_unbounded)},
          {"eps_converge", num(c.eps_converge)},
          {"converge_window", c.converge_window},
          {"max_period", c.max_period},
          {"eps_cycle", num(c.eps_cycle)},
          {"max_iters", c.max_iters},
          {"transient_discard", c.transient_discard}};
}

ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig cfg) {
  check_keys(j,
             {"eps_singular", "radius_unbounded", "eps_converge", "converge_window", "max_period",
              "eps_cycle", "max_iters", "transient_discard"},
             "tolerances");
  if (j.contains("eps_singular")) cfg.eps_singular = positive_from(j["eps_singular"], "eps_singular");
  if (j.contains("radius_unbounded"))
    cfg.radius_unbounded = positive_from(j["radius_unbounded"], "radius_unbounded");
  if (j.contains("eps_converge")) cfg.eps_converge = positive_from(j["eps_converge"], "eps_converge");
  if (j.contains("converge_window"))
    cfg.converge_window = static_cast<int>(integer_from(j["converge_window"], "converge_window"));
  if (j.contains("max_period"))
    cfg.max_period = static_cast<int>(integer_from(j["max_period"], "max_period"));
  if (j.contains("eps_cycle")) cfg.eps_cycle = positive_from(j["eps_cycle"], "eps_cycle");
  if (j.contains("max_iters")) cfg.max_iters = integer_from(j["max_iters"], "max_iters");
  if (j.contains("transient_discard"))
    cfg.transient_discard = integer_from(j["transient_discard"], "transient_discard");
  cfg.validate();
  return cfg;
}

Json to_json(const OrbitOutcome& o) {
  Json j = {{"kind", std::string(outcome_name(o))}};
  if (const auto* c = std::get_if<outcome::ConvergedTo>(&o)) {
    j["limit"] = to_json(c->limit);
  } else if (const auto* p = std::get_if<outcome::PeriodicCycle>(&o)) {
    j["period"] = p->period;
    Json cyc = Json::array();
    for (Complex z : p->cycle) cyc.push_back(to_json(z));
    j["cycle"] = cyc;
  } else if (const auto* s = std::get_if<outcome::Singular>(&o)) {
    j["step"] = s->step;
  } else if (const auto* u = std::get_if<outcome::Unbounded>(&o)) {
    j["step"] = u->step;
  }
  return j;
}

OrbitOutcome outcome_from_json(const Json& j) {
  const std::string kind = field(j, "kind", "outcome").get<std::string>();
  if (kind == "converged") {
    check_keys(j, {"kind", "limit"}, "outcome");
    return outcome::ConvergedTo{complex_from_json(field(j, "limit", "outcome"), "limit")};
  }
  if (kind == "periodic") {
    check_keys(j, {"kind", "period", "cycle"}, "outcome");
    outcome::PeriodicCycle p;
    p.period = static_cast<int>(integer_from(field(j, "period", "outcome"), "period"));
    for (const auto& z : field(j, "cycle", "outcome")) p.cycle.push_back(complex_from_json(z, "cycle"));
    return p;
  }
  if (kind == "singular" || kind == "unbounded") {
    check_keys(j, {"kind", "step"}, "outcome");
    long step = integer_from(field(j, "step", "outcome"), "step");
    if (kind == "singular") return outcome::Singular{step};
    return outcome::Unbounded{step};
  }
  if (kind == "undecided") {
    check_keys(j, {"kind"}, "outcome");
    return outcome::Undecided{};
  }
  throw InvalidArgument("outcome: unknown kind '" + kind + "'");
}

Json to_json(const CharQuadratic& q) {
  Json j = {{"r", to_json(q.r)}, {"s", to_json(q.s)}, {"c1", to_json(q.c1)}, {"c0", to_json(q.c0)}};
  j["closed_c1"] = q.closed_c1 ? to_json(*q.closed_c1) : Json(nullptr);
  j["closed_c0"] = q.closed_c0 ? to_json(*q.closed_c0) : Json(nullptr);
  j["closed_form_discrepancy"] = num(q.closed_form_discrepancy);
  return j;
}

CharQuadratic char_quadratic_from_json(const Json& j) {
  check_keys(j, {"r", "s", "c1", "c0", "closed_c1", "closed_c0", "closed_form_discrepancy"},
             "char_poly");
  CharQuadratic q;
  q.r = complex_from_json(field(j, "r", "char_poly"), "r");
  q.s = complex_from_json(field(j, "s", "char_poly"), "s");
  q.c1 = complex_from_json(field(j, "c1", "char_poly"), "c1");
  q.c0 = complex_from_json(field(j, "c0", "char_poly"), "c0");
  if (!field(j, "closed_c1", "char_poly").is_null()) q.closed_c1 = complex_from_json(j["closed_c1"], "closed_c1");
  if (!field(j, "closed_c0", "char_poly").is_null()) q.closed_c0 = complex_from_json(j["closed_c0"], "closed_c0");
  q.closed_form_discrepancy = number_from(field(j, "closed_form_discrepancy", "char_poly"), "discrepancy");
  return q;
}

Json to_json(const EquilibriumReport& r) {
  Json j = {{"value", to_json(r.value)},
            {"value_text", format_complex(r.value)},
            {"branch", std::string(branch_name(r.branch))},
            {"spurious", r.spurious}};
  j["char_poly"] = r.char_poly ? to_json(*r.char_poly) : Json(nullptr);
  j["root_moduli"] = moduli(r.root_moduli);
  j["stability"] = std::string(stability_name(r.stability));
  j["lemma_stability"] = std::string(stability_name(r.lemma_stability));
  j["criterion_value"] = num(r.criterion_value);
  j["fixed_point_residual"] = num(r.fixed_point_residual);
  j["warnings"] = r.warnings;
  return j;
}

EquilibriumReport equilibrium_report_from_json(const Json& j) {
  check_keys(j,
             {"value", "value_text", "branch", "spurious", "char_poly", "root_moduli", "stability",
              "lemma_stability", "criterion_value", "fixed_point_residual", "warnings"},
             "equilibrium");
  EquilibriumReport r;
  r.value = complex_from_json(field(j, "value", "equilibrium"), "value");
  r.branch = field(j, "branch", "equilibrium").get<std::string>() == "minus" ? Branch::minus : Branch::plus;
  r.spurious = field(j, "spurious", "equilibrium").get<bool>();
  if (!field(j, "char_poly", "equilibrium").is_null()) r.char_poly = char_quadratic_from_json(j["char_poly"]);
  r.root_moduli = moduli_from(field(j, "root_moduli", "equilibrium"), "root_moduli");
  r.stability = stability_from(field(j, "stability", "equilibrium"));
  r.lemma_stability = stability_from(field(j, "lemma_stability", "equilibrium"));
  r.criterion_value = number_from(field(j, "criterion_value", "equilibrium"), "criterion_value");
  r.fixed_point_residual = number_from(field(j, "fixed_point_residual", "equilibrium"), "residual");
  r.warnings = field(j, "warnings", "equilibrium").get<std::vector<std::string>>();
  return r;
}

Json to_json(const ConditionCheck& c) {
  return {{"beta_gt", c.beta_gt},
          {"beta_modulus", num(c.beta_modulus)},
          {"one_plus_4alpha_modulus", num(c.one_plus_4alpha_modulus)}};
}

ConditionCheck condition_check_from_json(const Json& j) {
  check_keys(j, {"beta_gt", "beta_modulus", "one_plus_4alpha_modulus"}, "condition");
  ConditionCheck c;
  c.beta_gt = field(j, "beta_gt", "condition").get<bool>();
  c.beta_modulus = number_from(field(j, "beta_modulus", "condition"), "beta_modulus");
  c.one_plus_4alpha_modulus = number_from(field(j, "one_plus_4alpha_modulus", "condition"), "modulus");
  return c;
}

Json to_json(const TwoCycle& c) {
  return {{"phi", to_json(c.phi)},
          {"psi", to_json(c.psi)},
          {"phi_text", format_complex(c.phi)},
          {"psi_text", format_complex(c.psi)},
          {"spurious", c.spurious},
          {"warnings", c.warnings}};
}

Json to_json(const TwoCycleStability& s) {
  return {{"chi", to_json(s.chi)},
          {"det", to_json(s.det)},
          {"verdict", std::string(stability_name(s.verdict))},
          {"eigen_moduli", moduli(s.eigen_moduli)},
          {"criterion_holds", s.criterion_holds},
          {"criterion_contradicted", s.criterion_contradicted},
          {"fd_rel_error", num(s.fd_rel_error)}};
}

TwoCycleStability two_cycle_stability_from_json(const Json& j) {
  check_keys(j,
             {"chi", "det", "verdict", "eigen_moduli",
              "criterion_holds", "criterion_contradicted", "fd_rel_error"},
             "stability");
  TwoCycleStability s;
  s.chi = complex_from_json(field(j, "chi", "stability"), "chi");
  s.det = complex_from_json(field(j, "det", "stability"), "det");
  s.verdict = stability_from(field(j, "verdict", "stability"));
  s.eigen_moduli = moduli_from(field(j, "eigen_moduli", "stability"), "eigen_moduli");
  s.criterion_holds = field(j, "criterion_holds", "stability").get<bool>();
  s.criterion_contradicted = field(j, "criterion_contradicted", "stability").get<bool>();
  s.fd_rel_error = number_from(field(j, "fd_rel_error", "stability"), "fd_rel_error");
  return s;
}

Json to_json(const CycleVerification& v) {
  return {{"ok", v.ok},
          {"on_cycle", v.on_cycle},
          {"perturbed_returned", v.perturbed_returned},
          {"detail", v.detail}};
}

Json to_json(const LyapunovEstimate& e) {
  Json series = Json::array();
  for (double x : e.running_series) series.push_back(num(x));
  return {{"lambda_max", num(e.lambda_max)},
          {"iterations", e.iterations},
          {"transient_discarded", e.transient_discarded},
          {"converged", e.converged},
          {"orbit_outcome", to_json(e.orbit_outcome)},
          {"min_tangent_norm", num(e.min_tangent_norm)},
          {"max_tangent_norm", num(e.max_tangent_norm)},
          {"series_stride", e.series_stride},
          {"running_series", series}};
}

LyapunovEstimate lyapunov_estimate_from_json(const Json& j) {
  check_keys(j,
             {"lambda_max", "iterations", "transient_discarded", "converged", "orbit_outcome",
              "min_tangent_norm", "max_tangent_norm", "series_stride", "running_series"},
             "lyapunov");
  LyapunovEstimate e;
  e.lambda_max = number_from(field(j, "lambda_max", "lyapunov"), "lambda_max");
  e.iterations = integer_from(field(j, "iterations", "lyapunov"), "iterations");
  e.transient_discarded = integer_from(field(j, "transient_discarded", "lyapunov"), "transient");
  e.converged = field(j, "converged", "lyapunov").get<bool>();
  e.orbit_outcome = outcome_from_json(field(j, "orbit_outcome", "lyapunov"));
  e.min_tangent_norm = number_from(field(j, "min_tangent_norm", "lyapunov"), "min_tangent_norm");
  e.max_tangent_norm = number_from(field(j, "max_tangent_norm", "lyapunov"), "max_tangent_norm");
  e.series_stride = integer_from(field(j, "series_stride", "lyapunov"), "series_stride");
  for (const auto& x : field(j, "running_series", "lyapunov"))
    e.running_series.push_back(number_from(x, "running_series"));
  return e;
}

Json to_json(const ExtremumResult& r) {
  return {{"objective", std::string(objective_name(r.objective))},
          {"best_value", num(r.best_value)},
          {"best_params", to_json(r.best_params)},
          {"evaluations", r.evaluations},
          {"seed", r.seed},
          {"best_random_start", num(r.best_random_start)}};
}

ExtremumResult extremum_result_from_json(const Json& j) {
  check_keys(j, {"objective", "best_value", "best_params", "evaluations", "seed", "best_random_start"},
             "extremum");
  ExtremumResult r;
  r.objective = objective_from_name(field(j, "objective", "extremum").get<std::string>());
  r.best_value = number_from(field(j, "best_value", "extremum"), "best_value");
  const Json& bp = field(j, "best_params", "extremum");
  check_keys(bp, {"alpha", "beta"}, "best_params");
  r.best_params = {complex_from_json(field(bp, "alpha", "best_params"), "alpha"),
                   complex_from_json(field(bp, "beta", "best_params"), "beta")};
  r.evaluations = integer_from(field(j, "evaluations", "extremum"), "evaluations");
  r.seed = field(j, "seed", "extremum").get<std::uint64_t>();
  r.best_random_start = number_from(field(j, "best_random_start", "extremum"), "best_random_start");
  return r;
}

Json to_json(const PeriodHarnessReport& r) {
  Json outcomes = Json::object();
  for (const auto& [k, n] : r.outcome_counts) outcomes[k] = n;
  Json periods = Json::object();
  for (const auto& [p, n] : r.period_counts) periods[std::to_string(p)] = n;
  Json offending = Json::array();
  for (const auto& s : r.offending) {
    Json cyc = Json::array();
    for (Complex z : s.cycle) cyc.push_back(to_json(z));
    offending.push_back({{"params", to_json(s.params)},
                         {"initial", to_json(s.initial)},
                         {"period", s.period},
                         {"cycle", cyc}});
  }
  return {{"n_samples", r.n_samples},
          {"param_box", num(r.param_box)},
          {"seed", r.seed},
          {"outcome_counts", outcomes},
          {"period_counts", periods},
          {"higher_period_total", r.higher_period_total()},
          {"offending", offending}};
}

namespace {

Json chaos_sample_json(const ChaosSample& s) {
  return {{"params", to_json(s.params)},
          {"initial", to_json(s.initial)},
          {"condition", to_json(s.condition)},
          {"survived", s.survived},
          {"lambda_max", s.survived ? num(s.lambda_max) : Json(nullptr)},
          {"converged", s.converged},
          {"chaotic", s.chaotic},
          {"outcome", s.outcome}};
}

}  // namespace

Json to_json(const ChaosHarnessReport& r) {
  Json samples = Json::array(), violations = Json::array();
  for (const auto& s : r.samples) samples.push_back(chaos_sample_json(s));
  for (const auto& s : r.violations) violations.push_back(chaos_sample_json(s));
  return {{"n_samples", r.n_samples},
          {"seed", r.seed},
          {"threshold", num(r.threshold)},
          {"contingency",
           {{"beta_lt_and_chaotic", r.table[1][1]},
            {"beta_lt_not_chaotic", r.table[1][0]},
            {"beta_ge_and_chaotic", r.table[0][1]},
            {"beta_ge_not_chaotic", r.table[0][0]}}},
          {"died", r.died},
          {"violations", violations},
          {"samples", samples}};
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::pgm: return "pgm";
  }
  return "json";
}

OutputFormat format_from_name(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "pgm") return OutputFormat::pgm;
  throw InvalidArgument("unknown output format '" + std::string(name) + "'");
}

Objective objective_from_name(std::string_view name) {
  for (auto o : {Objective::stability_margin_z1, Objective::stability_margin_z2, Objective::saddle_margin})
    if (objective_name(o) == name) return o;
  throw InvalidArgument("unknown objective '" + std::string(name) + "'");
}

std::string_view target_name(GridTarget t) {
  switch (t) {
    case GridTarget::initial_conditions: return "initial_conditions";
    case GridTarget::alpha_plane: return "alpha_plane";
    case GridTarget::beta_plane: return "beta_plane";
  }
  return "initial_conditions";
}

GridTarget target_from_name(std::string_view name) {
  for (auto t : {GridTarget::initial_conditions, GridTarget::alpha_plane, GridTarget::beta_plane})
    if (target_name(t) == name) return t;
  throw InvalidArgument("unknown grid target '" + std::string(name) + "'");
}

std::string_view slice_name(SlicePolicy s) {
  switch (s) {
    case SlicePolicy::z_prev_fixed: return "z_prev_fixed";
    case SlicePolicy::z_curr_fixed: return "z_curr_fixed";
    case SlicePolicy::diagonal: return "diagonal";
  }
  return "diagonal";
}

SlicePolicy slice_from_name(std::string_view name) {
  for (auto s : {SlicePolicy::z_prev_fixed, SlicePolicy::z_curr_fixed, SlicePolicy::diagonal})
    if (slice_name(s) == name) return s;
  throw InvalidArgument("unknown slice policy '" + std::string(name) + "'");
}

Params RunConfig::require_params() const {
  if (!alpha) throw InvalidArgument("config: 'alpha' is required for this command");
  if (!beta) throw InvalidArgument("config: 'beta' is required for this command");
  return {*alpha, *beta};
}

RunConfig run_config_from_json(const Json& j) {
  check_keys(j,
             {"alpha", "beta", "initial", "tolerances", "seed", "output_path", "output_format", "scan",
              "basin", "conjectures", "lyapunov"},
             "config");
  RunConfig c;
  if (j.contains("alpha")) c.alpha = complex_from_json(j["alpha"], "alpha");
  if (j.contains("beta")) c.beta = complex_from_json(j["beta"], "beta");
  if (j.contains("initial")) {
    const Json& init = j["initial"];
    check_keys(init, {"z_prev", "z_curr"}, "initial");
    c.initial = OrbitState{complex_from_json(field(init, "z_prev", "initial"), "z_prev"),
                           complex_from_json(field(init, "z_curr", "initial"), "z_curr"), 0};
  }
  if (j.contains("tolerances")) c.tolerances = tolerances_from_json(j["tolerances"]);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InvalidArgument("seed: expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string()) throw InvalidArgument("output_path: expected a string");
    c.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("output_format")) {
    if (!j["output_format"].is_string()) throw InvalidArgument("output_format: expected a string");
    c.output_format = format_from_name(j["output_format"].get<std::string>());
  }
  if (j.contains("scan")) {
    const Json& s = j["scan"];
    check_keys(s, {"objective", "alpha_radius", "beta_radius", "budget"}, "scan");
    if (s.contains("objective")) {
      if (!s["objective"].is_string()) throw InvalidArgument("scan.objective: expected a string");
      c.scan.objective = objective_from_name(s["objective"].get<std::string>());
    }
    if (s.contains("alpha_radius")) c.scan.alpha_radius = positive_from(s["alpha_radius"], "alpha_radius");
    if (s.contains("beta_radius")) c.scan.beta_radius = positive_from(s["beta_radius"], "beta_radius");
    if (s.contains("budget")) c.scan.budget = integer_from(s["budget"], "budget");
  }
  if (j.contains("basin")) {
    const Json& b = j["basin"];
    check_keys(b, {"center", "half_width", "resolution", "target", "slice", "partner", "match_eps"},
               "basin");
    if (b.contains("center")) c.basin.grid.center = complex_from_json(b["center"], "center");
    if (b.contains("half_width")) c.basin.grid.half_width = positive_from(b["half_width"], "half_width");
    if (b.contains("resolution")) {
      long res = integer_from(b["resolution"], "resolution");
      if (res < 2 || res > 4096) throw InvalidArgument("resolution: expected 2..4096");
      c.basin.grid.resolution = static_cast<int>(res);
    }
    if (b.contains("target")) {
      if (!b["target"].is_string()) throw InvalidArgument("basin.target: expected a string");
      c.basin.grid.target = target_from_name(b["target"].get<std::string>());
    }
    if (b.contains("slice")) {
      if (!b["slice"].is_string()) throw InvalidArgument("basin.slice: expected a string");
      c.basin.options.slice = slice_from_name(b["slice"].get<std::string>());
    }
    if (b.contains("partner")) c.basin.options.partner = complex_from_json(b["partner"], "partner");
    if (b.contains("match_eps")) c.basin.options.match_eps = positive_from(b["match_eps"], "match_eps");
  }
  if (j.contains("conjectures")) {
    const Json& s = j["conjectures"];
    check_keys(s, {"n_samples", "param_box", "n_steps", "chaos_samples"}, "conjectures");
    if (s.contains("n_samples")) c.conjectures.n_samples = integer_from(s["n_samples"], "n_samples");
    if (s.contains("param_box")) c.conjectures.param_box = positive_from(s["param_box"], "param_box");
    if (s.contains("n_steps")) c.conjectures.n_steps = integer_from(s["n_steps"], "n_steps");
    if (s.contains("chaos_samples"))
      c.conjectures.chaos_samples = integer_from(s["chaos_samples"], "chaos_samples");
  }
  if (j.contains("lyapunov")) {
    const Json& s = j["lyapunov"];
    check_keys(s, {"n_steps", "series_path"}, "lyapunov");
    if (s.contains("n_steps")) c.lyapunov.n_steps = integer_from(s["n_steps"], "n_steps");
    if (s.contains("series_path")) {
      if (!s["series_path"].is_string()) throw InvalidArgument("lyapunov.series_path: expected a string");
      c.lyapunov.series_path = s["series_path"].get<std::string>();
    }
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

namespace {

int gray_level(OrbitLabel label) {
  return static_cast<int>(label) * 255 / (kOrbitLabelCount - 1);
}

}  // namespace

Json basin_legend(const BasinRaster& raster) {
  Json levels = Json::object();
  for (int i = 0; i < kOrbitLabelCount; ++i) {
    auto label = static_cast<OrbitLabel>(i);
    levels[std::string(label_name(label))] = gray_level(label);
  }
  Json counts = Json::object();
  for (int i = 0; i < kOrbitLabelCount; ++i) {
    auto label = static_cast<OrbitLabel>(i);
    long n = std::count(raster.labels.begin(), raster.labels.end(), label);
    if (n > 0) counts[std::string(label_name(label))] = n;
  }
  return {{"params", to_json(raster.params)},
          {"grid",
           {{"center", to_json(raster.grid.center)},
            {"half_width", num(raster.grid.half_width)},
            {"resolution", raster.grid.resolution},
            {"target", std::string(target_name(raster.grid.target))}}},
          {"slice", std::string(slice_name(raster.options.slice))},
          {"partner", to_json(raster.options.partner)},
          {"tolerances", to_json(raster.config)},
          {"gray_levels", levels},
          {"counts", counts}};
}

Json to_json(const BasinRaster& raster) {
  Json j = basin_legend(raster);
  Json rows = Json::array();
  const int n = raster.grid.resolution;
  for (int r = 0; r < n; ++r) {
    Json row = Json::array();
    for (int c = 0; c < n; ++c) row.push_back(std::string(label_name(raster.at(r, c))));
    rows.push_back(row);
  }
  j.erase("gray_levels");
  j["labels"] = rows;
  return j;
}

void write_basin_pgm(std::ostream& out, const BasinRaster& raster) {
  const int n = raster.grid.resolution;
  out << "P2\n";
  for (int i = 0; i < kOrbitLabelCount; ++i) {
    auto label = static_cast<OrbitLabel>(i);
    out << "# " << gray_level(label) << ' ' << label_name(label) << '\n';
  }
  out << n << ' ' << n << "\n255\n";
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out << (c ? " " : "") << gray_level(raster.at(r, c));
    out << '\n';
  }
}

void write_basin_csv(std::ostream& out, const BasinRaster& raster) {
  const int n = raster.grid.resolution;
  out << "row,col,re,im,label\n";
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex z = raster.grid.cell(r, c);
      out << r << ',' << c << ',' << format_number(z.real()) << ',' << format_number(z.imag()) << ','
          << label_name(raster.at(r, c)) << '\n';
    }
}

}  // namespace ratdyn
