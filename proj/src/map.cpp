#include "ratdyn/map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ratdyn/errors.hpp"

namespace ratdyn {

void ToleranceConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument("tolerances: " + msg); };
  if (!(eps_singular > 0.0)) fail("eps_singular must be > 0");
  if (!(radius_unbounded > 0.0)) fail("radius_unbounded must be > 0");
  if (!(eps_converge > 0.0)) fail("eps_converge must be > 0");
  if (converge_window < 2) fail("converge_window must be >= 2");
  if (max_period < 2) fail("max_period must be >= 2");
  if (!(eps_cycle > 0.0)) fail("eps_cycle must be > 0");
  if (max_iters < 1) fail("max_iters must be >= 1");
  if (transient_discard < 0) fail("transient_discard must be >= 0");
  if (transient_discard >= max_iters) fail("transient_discard must be < max_iters");
  if (converge_window > max_iters) fail("converge_window must be <= max_iters");
}

std::string_view outcome_name(const OrbitOutcome& o) {
  struct {
    std::string_view operator()(const outcome::ConvergedTo&) const { return "converged"; }
    std::string_view operator()(const outcome::PeriodicCycle&) const { return "periodic"; }
    std::string_view operator()(const outcome::Singular&) const { return "singular"; }
    std::string_view operator()(const outcome::Unbounded&) const { return "unbounded"; }
    std::string_view operator()(const outcome::Undecided&) const { return "undecided"; }
  } visitor;
  return std::visit(visitor, o);
}

Complex step(const Params& params, const OrbitState& state, double eps_singular) {
  Complex den = denominator(params, state.z_prev, state.z_curr);
  if (std::abs(den) < eps_singular) {
    std::ostringstream msg;
    msg << "denominator beta*z_n + z_{n-1} vanishes at n=" << state.n << " (|den|=" << std::abs(den)
        << ")";
    throw SingularError(msg.str(), std::abs(den));
  }
  return (params.alpha + state.z_prev) / den;
}

OrbitState advance(const Params& params, const OrbitState& state, double eps_singular) {
  return {state.z_curr, step(params, state, eps_singular), state.n + 1};
}

Mat2 jacobian_T(const Params& params, Complex u, Complex v) {
  Complex den = params.beta * v + u;
  Complex den2 = den * den;
  return {{{Complex{0.0}, Complex{1.0}},
           {(params.beta * v - params.alpha) / den2, -params.beta * (params.alpha + u) / den2}}};
}

namespace {

bool window_converged(const std::vector<Complex>& pts, const ToleranceConfig& cfg) {
  auto window = static_cast<std::size_t>(cfg.converge_window);
  if (pts.size() < window) return false;
  const Complex last = pts.back();
  for (std::size_t k = pts.size() - window; k < pts.size(); ++k)
    if (!(std::abs(pts[k] - last) < cfg.eps_converge)) return false;
  return true;
}

}  // namespace

Orbit iterate(const Params& params, const OrbitState& initial, const ToleranceConfig& cfg) {
  cfg.validate();
  Orbit orbit{params, initial, {}, outcome::Undecided{}, 0};
  orbit.points.reserve(static_cast<std::size_t>(std::min<long>(cfg.max_iters, 1 << 20)));

  Complex u = initial.z_prev, v = initial.z_curr;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    Complex den = denominator(params, u, v);
    if (!(std::abs(den) >= cfg.eps_singular)) {
      orbit.outcome = outcome::Singular{k};
      orbit.iterations_used = static_cast<long>(orbit.points.size());
      return orbit;
    }
    Complex z = (params.alpha + u) / den;
    if (!is_finite(z) || std::abs(z) > cfg.radius_unbounded) {
      orbit.outcome = outcome::Unbounded{k};
      orbit.iterations_used = static_cast<long>(orbit.points.size());
      return orbit;
    }
    orbit.points.push_back(z);
    u = v;
    v = z;
    if (window_converged(orbit.points, cfg)) {
      orbit.outcome = outcome::ConvergedTo{z};
      orbit.iterations_used = static_cast<long>(orbit.points.size());
      return orbit;
    }
  }

  orbit.iterations_used = static_cast<long>(orbit.points.size());
  const auto tail_len = static_cast<std::size_t>(2 * cfg.max_period);
  const auto usable = orbit.points.size() - static_cast<std::size_t>(cfg.transient_discard);
  if (usable >= tail_len) {
    std::span<const Complex> tail(orbit.points.data() + orbit.points.size() - tail_len, tail_len);
    if (auto c = detect_cycle(tail, cfg.max_period, cfg.eps_cycle))
      orbit.outcome = outcome::PeriodicCycle{c->period, std::move(c->cycle)};
  }
  return orbit;
}

std::optional<DetectedCycle> detect_cycle(std::span<const Complex> tail, int max_period,
                                          double eps_cycle) {
  if (max_period < 2) throw InvalidArgument("detect_cycle: max_period must be >= 2");
  if (tail.size() < static_cast<std::size_t>(2 * max_period))
    throw InsufficientDataError("detect_cycle: tail shorter than 2*max_period");

  auto repeats = [&](std::size_t p) {
    for (std::size_t k = 0; k + p < tail.size(); ++k)
      if (!(std::abs(tail[k + p] - tail[k]) < eps_cycle)) return false;
    return true;
  };

  if (repeats(1)) return std::nullopt;
  for (int p = 2; p <= max_period; ++p) {
    if (repeats(static_cast<std::size_t>(p))) {
      DetectedCycle out{p, {}};
      out.cycle.assign(tail.end() - p, tail.end());
      return out;
    }
  }
  return std::nullopt;
}

namespace {

constexpr std::array<std::string_view, kOrbitLabelCount> kLabelNames = {
    "equilibrium-1",   "equilibrium-2", "other-limit", "known-two-cycle", "other-two-cycle",
    "higher-period",   "singular",      "unbounded",   "undecided"};

}  // namespace

std::string_view label_name(OrbitLabel label) { return kLabelNames[static_cast<int>(label)]; }

std::optional<OrbitLabel> label_from_name(std::string_view name) {
  for (int i = 0; i < kOrbitLabelCount; ++i)
    if (kLabelNames[i] == name) return static_cast<OrbitLabel>(i);
  return std::nullopt;
}

RefinedOutcome classify_orbit(const Orbit& orbit, const KnownAttractors& known, double eps) {
  RefinedOutcome out;
  if (std::holds_alternative<outcome::Singular>(orbit.outcome)) {
    out.label = OrbitLabel::singular;
  } else if (std::holds_alternative<outcome::Unbounded>(orbit.outcome)) {
    out.label = OrbitLabel::unbounded;
  } else if (std::holds_alternative<outcome::Undecided>(orbit.outcome)) {
    out.label = OrbitLabel::undecided;
  } else if (const auto* c = std::get_if<outcome::ConvergedTo>(&orbit.outcome)) {
    double d1 = known.equilibrium_1 ? std::abs(c->limit - *known.equilibrium_1) : INFINITY;
    double d2 = known.equilibrium_2 ? std::abs(c->limit - *known.equilibrium_2) : INFINITY;
    if (d1 <= d2 && d1 < eps) {
      out = {OrbitLabel::equilibrium_1, d1};
    } else if (d2 < eps) {
      out = {OrbitLabel::equilibrium_2, d2};
    } else {
      double d = std::min(d1, d2);
      out = {OrbitLabel::other_limit, std::isfinite(d) ? d : 0.0};
    }
  } else {
    const auto& cyc = std::get<outcome::PeriodicCycle>(orbit.outcome);
    if (cyc.period != 2) {
      out.label = OrbitLabel::higher_period;
    } else if (known.two_cycle) {
      auto [phi, psi] = *known.two_cycle;
      const Complex a = cyc.cycle[0], b = cyc.cycle[1];
      double d = std::min(std::max(std::abs(a - phi), std::abs(b - psi)),
                          std::max(std::abs(a - psi), std::abs(b - phi)));
      out = {d < eps ? OrbitLabel::known_two_cycle : OrbitLabel::other_two_cycle, d};
    } else {
      out.label = OrbitLabel::other_two_cycle;
    }
  }
  return out;
}

}  // namespace ratdyn
