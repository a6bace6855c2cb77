#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/equilibria.hpp"
#include "ratdyn/map.hpp"
#include "ratdyn/numeric.hpp"

namespace ratdyn {

// Prime period-two solution. phi has the smaller real part (then imaginary).
struct TwoCycle {
  Complex phi;
  Complex psi;
  // Set when one of beta psi + phi, beta phi + psi vanishes.
  bool spurious = false;
  std::vector<std::string> warnings;
};

// Roots of t^2 - t + alpha / (beta - 1). Throws DegenerateError for beta = 1
// and NoDistinctCycleError when the discriminant is below 1e-12.
TwoCycle two_cycle(const Params& params, double eps_singular = 1e-12);

struct T2Jacobian {
  Mat2 matrix;       // chain rule
  Mat2 fd_matrix;    // central differences of T∘T
  double fd_rel_error = 0.0;
};

// J_T(psi, phi) * J_T(phi, psi). Throws SingularError on a vanishing denominator.
T2Jacobian t2_jacobian(const Params& params, const TwoCycle& cycle, double eps_singular = 1e-12);

struct TwoCycleStability {
  Complex chi;  // trace of J_{T^2}
  Complex det;
  StabilityClass verdict = StabilityClass::inconclusive;
  std::pair<double, double> eigen_moduli{0.0, 0.0};
  // |chi| < 1 + |det| < 2
  bool criterion_holds = false;
  // The criterion held but an eigenvalue sits on or outside the unit circle.
  bool criterion_contradicted = false;
  double fd_rel_error = 0.0;
};

TwoCycleStability classify_jacobian(const Mat2& j);
TwoCycleStability classify_two_cycle(const Params& params, const TwoCycle& cycle);

struct CycleVerification {
  bool ok = false;
  bool on_cycle = false;
  // Not attempted unless the verdict is stable.
  bool perturbed_returned = false;
  std::string detail;
};

// Iterates from (phi, psi) and, for a stable verdict, from a start displaced
// by 1e-3 in a seeded random direction.
CycleVerification verify_cycle_dynamically(const Params& params, const TwoCycle& cycle,
                                           const ToleranceConfig& cfg, std::uint64_t seed = 0);

}  // namespace ratdyn
