#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ratdyn/numeric.hpp"
#include "ratdyn/types.hpp"

namespace ratdyn {

struct ToleranceConfig {
  double eps_singular = 1e-12;
  double radius_unbounded = 1e8;
  double eps_converge = 1e-9;
  int converge_window = 20;
  int max_period = 50;
  double eps_cycle = 1e-6;
  long max_iters = 20000;
  long transient_discard = 1000;

  // Throws InvalidArgument on out-of-range fields.
  void validate() const;

  friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

namespace outcome {
struct ConvergedTo {
  Complex limit;
  friend bool operator==(const ConvergedTo&, const ConvergedTo&) = default;
};
struct PeriodicCycle {
  int period = 0;
  std::vector<Complex> cycle;
  friend bool operator==(const PeriodicCycle&, const PeriodicCycle&) = default;
};
// step is the 1-based index k of the value z_k that could not be produced.
struct Singular {
  long step = 0;
  friend bool operator==(const Singular&, const Singular&) = default;
};
struct Unbounded {
  long step = 0;
  friend bool operator==(const Unbounded&, const Unbounded&) = default;
};
struct Undecided {
  friend bool operator==(const Undecided&, const Undecided&) = default;
};
}  // namespace outcome

using OrbitOutcome = std::variant<outcome::ConvergedTo, outcome::PeriodicCycle, outcome::Singular,
                                  outcome::Unbounded, outcome::Undecided>;

std::string_view outcome_name(const OrbitOutcome& o);

struct Orbit {
  Params params;
  OrbitState initial;
  std::vector<Complex> points;  // z_1 ... z_N
  OrbitOutcome outcome;
  long iterations_used = 0;
};

// beta z_curr + z_prev
inline Complex denominator(const Params& p, Complex z_prev, Complex z_curr) {
  return p.beta * z_curr + z_prev;
}

// Next value z_{n+1}. Throws SingularError when |denominator| < eps_singular.
Complex step(const Params& params, const OrbitState& state, double eps_singular = 1e-12);

// The planar map T(u, v) = (v, f(u, v)).
OrbitState advance(const Params& params, const OrbitState& state, double eps_singular = 1e-12);

// Jacobian of T at (u, v) = (z_prev, z_curr). Upper row is (0, 1).
Mat2 jacobian_T(const Params& params, Complex u, Complex v);

// Outcome rules apply in order Singular, Unbounded, ConvergedTo, PeriodicCycle, Undecided.
Orbit iterate(const Params& params, const OrbitState& initial, const ToleranceConfig& cfg);

struct DetectedCycle {
  int period = 0;
  std::vector<Complex> cycle;
};

// Smallest p in [2, max_period] under which the tail repeats. A tail that
// already repeats with period 1 is convergence and yields nothing.
std::optional<DetectedCycle> detect_cycle(std::span<const Complex> tail, int max_period,
                                          double eps_cycle);

enum class OrbitLabel {
  equilibrium_1,
  equilibrium_2,
  other_limit,
  known_two_cycle,
  other_two_cycle,
  higher_period,
  singular,
  unbounded,
  undecided,
};

inline constexpr int kOrbitLabelCount = 9;

std::string_view label_name(OrbitLabel label);
std::optional<OrbitLabel> label_from_name(std::string_view name);

struct KnownAttractors {
  std::optional<Complex> equilibrium_1;
  std::optional<Complex> equilibrium_2;
  std::optional<std::pair<Complex, Complex>> two_cycle;
};

// Equilibria and the closed-form two-cycle where they exist; degenerate
// pieces are left empty.
KnownAttractors known_attractors(const Params& params);

struct RefinedOutcome {
  OrbitLabel label = OrbitLabel::undecided;
  // Distance to the matched (or nearest) reference; 0 when nothing to compare.
  double distance = 0.0;
};

RefinedOutcome classify_orbit(const Orbit& orbit, const KnownAttractors& known, double eps);

}  // namespace ratdyn
