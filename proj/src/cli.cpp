#include "ratdyn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ratdyn/errors.hpp"
#include "ratdyn/io.hpp"
#include "ratdyn/random.hpp"
#include "ratdyn/reference_data.hpp"

namespace ratdyn {

namespace {

struct Overrides {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<long> iters;
  std::vector<double> alpha, beta, initial;
  std::optional<double> eps_singular, radius_unbounded, eps_converge, eps_cycle;
  std::optional<int> converge_window, max_period;
  std::optional<long> transient;
  std::optional<long> steps, budget, samples;
  std::optional<int> resolution;
  std::string objective;
  std::string series;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv, json or pgm")
      ->check(CLI::IsMember({"csv", "json", "pgm"}));
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--iters", o.iters, "maximum iterations per orbit");
  cmd->add_option("--alpha", o.alpha, "alpha as RE IM")->expected(2);
  cmd->add_option("--beta", o.beta, "beta as RE IM")->expected(2);
  cmd->add_option("--initial", o.initial, "z_prev and z_curr as RE IM RE IM")->expected(4);
  cmd->add_option("--eps-singular", o.eps_singular);
  cmd->add_option("--radius-unbounded", o.radius_unbounded);
  cmd->add_option("--eps-converge", o.eps_converge);
  cmd->add_option("--converge-window", o.converge_window);
  cmd->add_option("--max-period", o.max_period);
  cmd->add_option("--eps-cycle", o.eps_cycle);
  cmd->add_option("--transient", o.transient, "iterations discarded before measuring");
}

RunConfig build_config(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (!o.out_path.empty()) c.output_path = o.out_path;
  if (!o.format.empty()) c.output_format = format_from_name(o.format);
  if (!o.alpha.empty()) c.alpha = Complex{o.alpha[0], o.alpha[1]};
  if (!o.beta.empty()) c.beta = Complex{o.beta[0], o.beta[1]};
  if (!o.initial.empty())
    c.initial = OrbitState{{o.initial[0], o.initial[1]}, {o.initial[2], o.initial[3]}, 0};
  ToleranceConfig& t = c.tolerances;
  if (o.iters) t.max_iters = *o.iters;
  if (o.eps_singular) t.eps_singular = *o.eps_singular;
  if (o.radius_unbounded) t.radius_unbounded = *o.radius_unbounded;
  if (o.eps_converge) t.eps_converge = *o.eps_converge;
  if (o.converge_window) t.converge_window = *o.converge_window;
  if (o.max_period) t.max_period = *o.max_period;
  if (o.eps_cycle) t.eps_cycle = *o.eps_cycle;
  if (o.transient) t.transient_discard = *o.transient;
  // A short --iters alone keeps the run legal by shrinking the default transient.
  if (o.iters && !o.transient && t.transient_discard >= t.max_iters) t.transient_discard = t.max_iters / 2;
  t.validate();
  if (c.alpha && !is_finite(*c.alpha)) throw InvalidArgument("alpha must be finite");
  if (c.beta && !is_finite(*c.beta)) throw InvalidArgument("beta must be finite");
  if (o.steps) {
    c.lyapunov.n_steps = *o.steps;
    c.conjectures.n_steps = *o.steps;
  }
  if (o.budget) c.scan.budget = *o.budget;
  if (o.samples) c.conjectures.n_samples = *o.samples;
  if (o.resolution) c.basin.grid.resolution = *o.resolution;
  if (!o.objective.empty()) c.scan.objective = objective_from_name(o.objective);
  if (!o.series.empty()) c.lyapunov.series_path = o.series;
  return c;
}

OutputFormat pick_format(const RunConfig& c, OutputFormat fallback,
                         std::initializer_list<OutputFormat> allowed, std::string_view command) {
  OutputFormat f = c.output_format.value_or(fallback);
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
    throw InvalidArgument(std::string(command) + " does not support format '" +
                          std::string(format_name(f)) + "'");
  return f;
}

// Single writer: either the requested file or the caller's stream.
void emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (c.output_path.empty()) {
    write(out);
    out.flush();
    return;
  }
  std::ofstream file(c.output_path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + c.output_path + "'");
  write(file);
  if (!file) throw Error("failed writing '" + c.output_path + "'");
}

void emit_json(const RunConfig& c, std::ostream& out, const Json& j) {
  emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

OrbitState seeded_initial(std::uint64_t seed) {
  Rng rng(seed);
  Complex z_prev = uniform_disk(rng, 1.0);
  Complex z_curr = uniform_disk(rng, 1.0);
  return {z_prev, z_curr, 0};
}

Json nullable(const std::function<double()>& f) {
  try {
    double x = f();
    return std::isfinite(x) ? Json(round15(x)) : Json(nullptr);
  } catch (const DegenerateError&) {
    return nullptr;
  }
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  pick_format(c, OutputFormat::json, {OutputFormat::json}, "analyze");
  const Params p = c.require_params();
  auto eqs = equilibria(p);
  Json j = {{"command", "analyze"}, {"params", to_json(p)}};
  j["discriminant_root"] = to_json(equilibrium_discriminant_root(p));
  j["equilibria"] = Json::array({to_json(eqs[0]), to_json(eqs[1])});
  j["margins"] = {
      {"stability_margin_z1", nullable([&] { return stability_margin(p, Branch::minus); })},
      {"stability_margin_z2", nullable([&] { return stability_margin(p, Branch::plus); })},
      {"saddle_margin_z1", nullable([&] { return saddle_margin(p, Branch::minus); })},
      {"saddle_margin_z2", nullable([&] { return saddle_margin(p, Branch::plus); })}};
  j["condition"] = to_json(condition_check(p));
  if (std::abs(p.alpha - p.beta) == 0.0) {
    try {
      auto sc = special_case_alpha_eq_beta(p.alpha);
      j["special_case"] = {{"equilibria", Json::array({to_json(sc.equilibria[0]), to_json(sc.equilibria[1])})},
                           {"printed_lower", round15(sc.printed_lower)},
                           {"printed_middle", round15(sc.printed_middle)},
                           {"printed_condition", sc.printed_condition},
                           {"printed_r_modulus", round15(sc.printed_r_modulus)}};
    } catch (const DegenerateError&) {
      j["special_case"] = nullptr;
    }
  }
  emit_json(c, out, j);
  return kExitOk;
}

int cmd_orbit(const RunConfig& c, std::ostream& out) {
  OutputFormat f = pick_format(c, OutputFormat::csv, {OutputFormat::csv, OutputFormat::json}, "orbit");
  const Params p = c.require_params();
  if (!c.initial) throw InvalidArgument("orbit needs an initial pair ('initial' or --initial)");
  Orbit orbit = iterate(p, *c.initial, c.tolerances);
  Json footer = {{"outcome", to_json(orbit.outcome)}, {"iterations_used", orbit.iterations_used}};
  if (f == OutputFormat::json) {
    Json points = Json::array();
    for (Complex z : orbit.points) points.push_back(to_json(z));
    Json j = {{"command", "orbit"},
              {"params", to_json(p)},
              {"initial", to_json(*c.initial)},
              {"tolerances", to_json(c.tolerances)},
              {"outcome", footer["outcome"]},
              {"iterations_used", orbit.iterations_used},
              {"points", points}};
    emit_json(c, out, j);
    return kExitOk;
  }
  emit(c, out, [&](std::ostream& os) {
    os << "n,re,im,modulus\n";
    auto row = [&](long n, Complex z) {
      os << n << ',' << format_number(z.real()) << ',' << format_number(z.imag()) << ','
         << format_number(std::abs(z)) << '\n';
    };
    row(0, c.initial->z_curr);
    for (std::size_t i = 0; i < orbit.points.size(); ++i) row(static_cast<long>(i) + 1, orbit.points[i]);
    os << "# outcome: " << footer.dump() << '\n';
  });
  return kExitOk;
}

int cmd_period2(const RunConfig& c, std::ostream& out) {
  pick_format(c, OutputFormat::json, {OutputFormat::json}, "period2");
  const Params p = c.require_params();
  TwoCycle cycle = two_cycle(p, c.tolerances.eps_singular);
  Json j = {{"command", "period2"}, {"params", to_json(p)}, {"cycle", to_json(cycle)}};
  const Complex k = p.alpha / (p.beta - 1.0);
  j["vieta"] = {{"sum_residual", round15(std::abs(cycle.phi + cycle.psi - 1.0))},
                {"product_residual", round15(std::abs(cycle.phi * cycle.psi - k))}};
  if (cycle.spurious) {
    j["chi_modulus"] = nullptr;
    j["det_modulus"] = nullptr;
    j["stability"] = nullptr;
    j["verification"] = nullptr;
  } else {
    TwoCycleStability st = classify_two_cycle(p, cycle);
    j["chi_modulus"] = round15(std::abs(st.chi));
    j["det_modulus"] = round15(std::abs(st.det));
    j["stability"] = to_json(st);
    j["verification"] = to_json(verify_cycle_dynamically(p, cycle, c.tolerances, c.seed));
  }
  emit_json(c, out, j);
  return kExitOk;
}

int cmd_lyapunov(const RunConfig& c, std::ostream& out) {
  pick_format(c, OutputFormat::json, {OutputFormat::json}, "lyapunov");
  const Params p = c.require_params();
  const OrbitState init = c.initial.value_or(seeded_initial(c.seed));
  LyapunovEstimate e = lyapunov_max(p, init, c.tolerances, c.lyapunov.n_steps);
  Json chaotic;
  try {
    chaotic = classify_chaotic(e);
  } catch (const NotConvergedError&) {
    chaotic = nullptr;
  }
  Json j = {{"command", "lyapunov"},
            {"params", to_json(p)},
            {"initial", to_json(init)},
            {"seed", c.seed},
            {"n_steps", c.lyapunov.n_steps},
            {"chaotic", chaotic},
            {"estimate", to_json(e)}};
  if (!c.lyapunov.series_path.empty()) {
    std::ofstream series(c.lyapunov.series_path, std::ios::binary);
    if (!series) throw InvalidArgument("cannot open series file '" + c.lyapunov.series_path + "'");
    series << "step,running_mean\n";
    for (std::size_t i = 0; i < e.running_series.size(); ++i) {
      long stepno = std::min<long>(static_cast<long>(i + 1) * e.series_stride, e.iterations);
      series << stepno << ',' << format_number(e.running_series[i]) << '\n';
    }
  }
  emit_json(c, out, j);
  return kExitOk;
}

int cmd_scan(const RunConfig& c, std::ostream& out) {
  pick_format(c, OutputFormat::json, {OutputFormat::json}, "scan");
  if (!c.scan.objective) throw InvalidArgument("scan needs an objective ('scan.objective' or --objective)");
  const Objective obj = *c.scan.objective;
  const double fallback = obj == Objective::saddle_margin ? 10.0 : 1.0;
  SearchDomain domain{c.scan.alpha_radius.value_or(fallback), c.scan.beta_radius.value_or(fallback)};
  ExtremumResult r = find_extremum(obj, domain, c.scan.budget, c.seed);
  Json j = {{"command", "scan"},
            {"domain", {{"alpha_radius", round15(domain.alpha_radius)}, {"beta_radius", round15(domain.beta_radius)}}},
            {"budget", c.scan.budget},
            {"result", to_json(r)}};
  emit_json(c, out, j);
  return kExitOk;
}

int cmd_basin(const RunConfig& c, std::ostream& out) {
  OutputFormat f = pick_format(c, OutputFormat::pgm,
                               {OutputFormat::pgm, OutputFormat::csv, OutputFormat::json}, "basin");
  const Params p = c.require_params();
  BasinRaster raster = basin_raster(p, c.basin.grid, c.tolerances, c.basin.options);
  switch (f) {
    case OutputFormat::pgm:
      emit(c, out, [&](std::ostream& os) { write_basin_pgm(os, raster); });
      if (!c.output_path.empty()) {
        std::ofstream legend(c.output_path + ".legend.json", std::ios::binary);
        if (!legend) throw InvalidArgument("cannot write legend sidecar");
        legend << basin_legend(raster).dump(2) << '\n';
      }
      break;
    case OutputFormat::csv:
      emit(c, out, [&](std::ostream& os) { write_basin_csv(os, raster); });
      break;
    case OutputFormat::json:
      emit_json(c, out, to_json(raster));
      break;
  }
  return kExitOk;
}

int cmd_conjectures(const RunConfig& c, std::ostream& out) {
  pick_format(c, OutputFormat::json, {OutputFormat::json}, "conjectures");
  const auto& cs = c.conjectures;
  if (cs.n_samples < 1) throw InvalidArgument("conjectures.n_samples must be positive");
  if (cs.chaos_samples < 0) throw InvalidArgument("conjectures.chaos_samples must be non-negative");
  PeriodHarnessReport period = conjecture_p3_harness(cs.n_samples, cs.param_box, c.tolerances, c.seed);
  std::vector<Params> rows;
  for (const auto& row : chaotic_table()) rows.push_back(row.params);
  ChaosHarnessReport chaos = conjecture_chaos_harness(rows, c.tolerances, c.seed, cs.n_steps);
  Json j = {{"command", "conjectures"},
            {"period_harness", to_json(period)},
            {"chaos_harness_reference", to_json(chaos)}};
  if (cs.chaos_samples > 0)
    j["chaos_harness_sampled"] =
        to_json(conjecture_chaos_harness(cs.chaos_samples, cs.param_box, c.tolerances, c.seed, cs.n_steps));
  emit_json(c, out, j);
  return kExitOk;
}

struct TableCell {
  std::string table;
  int row;
  std::string quantity;
  Complex reference;
  Complex computed;
};

std::vector<TableCell> regenerate_tables(const RunConfig& c) {
  std::vector<TableCell> cells;
  for (const auto& row : period_two_table()) {
    TwoCycle cycle = two_cycle(row.params, c.tolerances.eps_singular);
    cells.push_back({"period_two", row.row, "phi", row.phi, cycle.phi});
    cells.push_back({"period_two", row.row, "psi", row.psi, cycle.psi});
  }
  constexpr int kStarts = 10;
  const double nan = std::nan("");
  for (const auto& row : chaotic_table()) {
    Rng rng(c.seed + static_cast<std::uint64_t>(row.row));
    std::vector<double> lambdas;
    for (int k = 0; k < kStarts; ++k) {
      Complex z_prev = uniform_disk(rng, 1.0);
      Complex z_curr = uniform_disk(rng, 1.0);
      try {
        lambdas.push_back(lyapunov_max(row.params, {z_prev, z_curr, 0}, c.tolerances, c.lyapunov.n_steps).lambda_max);
      } catch (const OrbitDiedError&) {
      }
    }
    std::sort(lambdas.begin(), lambdas.end());
    double median = nan, lo = nan, hi = nan;
    if (!lambdas.empty()) {
      std::size_t m = lambdas.size();
      median = m % 2 ? lambdas[m / 2] : 0.5 * (lambdas[m / 2 - 1] + lambdas[m / 2]);
      lo = lambdas.front();
      hi = lambdas.back();
    }
    cells.push_back({"chaotic", row.row, "lyapunov_median", row.lyapunov, median});
    cells.push_back({"chaotic", row.row, "lyapunov_min", row.lyapunov, lo});
    cells.push_back({"chaotic", row.row, "lyapunov_max", row.lyapunov, hi});
  }
  return cells;
}

int cmd_tables(const RunConfig& c, std::ostream& out) {
  OutputFormat f = pick_format(c, OutputFormat::csv, {OutputFormat::csv, OutputFormat::json}, "tables");
  auto cells = regenerate_tables(c);
  if (f == OutputFormat::json) {
    Json rows = Json::array();
    for (const auto& cell : cells) {
      double d = std::abs(cell.reference - cell.computed);
      rows.push_back({{"table", cell.table},
                      {"row", cell.row},
                      {"quantity", cell.quantity},
                      {"reference", to_json(cell.reference)},
                      {"computed", is_finite(cell.computed) ? to_json(cell.computed) : Json(nullptr)},
                      {"abs_diff", std::isfinite(d) ? Json(round15(d)) : Json(nullptr)}});
    }
    emit_json(c, out, {{"command", "tables"}, {"seed", c.seed}, {"cells", rows}});
    return kExitOk;
  }
  emit(c, out, [&](std::ostream& os) {
    os << "table,row,quantity,reference_re,reference_im,computed_re,computed_im,abs_diff\n";
    for (const auto& cell : cells) {
      os << cell.table << ',' << cell.row << ',' << cell.quantity << ',' << format_number(cell.reference.real())
         << ',' << format_number(cell.reference.imag()) << ',' << format_number(cell.computed.real()) << ','
         << format_number(cell.computed.imag()) << ',' << format_number(std::abs(cell.reference - cell.computed))
         << '\n';
    }
  });
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamics of z(n+1) = (alpha + z(n-1)) / (beta z(n) + z(n-1)) over the complex numbers",
               "ratdyn"};
  app.require_subcommand(1, 1);
  Overrides o;
  using Handler = int (*)(const RunConfig&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, o);
    commands.emplace_back(cmd, h);
    return cmd;
  };
  add("analyze", "equilibria, linearizations and margins", cmd_analyze);
  add("orbit", "iterate from an initial pair", cmd_orbit);
  add("period2", "prime period-two solution and its stability", cmd_period2);
  CLI::App* lyap = add("lyapunov", "largest Lyapunov exponent", cmd_lyapunov);
  lyap->add_option("--steps", o.steps, "measured iterations after the transient");
  lyap->add_option("--series", o.series, "running-mean CSV path");
  CLI::App* scan = add("scan", "seeded extremum search", cmd_scan);
  scan->add_option("--objective", o.objective, "stability_margin_z1, stability_margin_z2 or saddle_margin");
  scan->add_option("--budget", o.budget, "objective evaluations");
  add("basin", "outcome raster over a grid", cmd_basin)->add_option("--resolution", o.resolution);
  CLI::App* conj = add("conjectures", "period and chaos harnesses", cmd_conjectures);
  conj->add_option("--samples", o.samples, "period harness sample count");
  conj->add_option("--steps", o.steps, "Lyapunov steps per chaos sample");
  add("tables", "regenerate the reference tables", cmd_tables)
      ->add_option("--steps", o.steps, "Lyapunov steps per start");

  std::vector<const char*> argv{"ratdyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config = build_config(o);
    for (auto& [cmd, handler] : commands)
      if (cmd->parsed()) return handler(config, out);
    err << "ratdyn: no command\n";
    return kExitUsage;
  } catch (const DegenerateError& e) {
    err << "ratdyn: degenerate parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoDistinctCycleError& e) {
    err << "ratdyn: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OrbitDiedError& e) {
    err << "ratdyn: orbit died at step " << e.step << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularError& e) {
    err << "ratdyn: singular: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "ratdyn: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "ratdyn: bad configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ratdyn: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace ratdyn
