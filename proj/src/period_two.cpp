#include "ratdyn/period_two.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratdyn/errors.hpp"
#include "ratdyn/random.hpp"

namespace ratdyn {

namespace {

constexpr double kDegenerate = 1e-12;
constexpr double kFdStep = 1e-6;

bool ordered_before(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::pair<Complex, Complex> t_squared(const Params& p, Complex u, Complex v) {
  Complex g = (p.alpha + u) / (p.beta * v + u);
  Complex h = (p.alpha + v) / (p.beta * g + v);
  return {g, h};
}

double set_distance(Complex a, Complex b, Complex x, Complex y) {
  return std::min(std::max(std::abs(a - x), std::abs(b - y)),
                  std::max(std::abs(a - y), std::abs(b - x)));
}

StabilityClass classify_moduli(double m1, double m2) {
  if (std::abs(m1 - 1.0) < 1e-9 || std::abs(m2 - 1.0) < 1e-9) return StabilityClass::inconclusive;
  if (m1 < 1.0 && m2 < 1.0) return StabilityClass::locally_asymptotically_stable;
  if (std::min(m1, m2) < 1.0) return StabilityClass::saddle;
  return StabilityClass::unstable;
}

}  // namespace

TwoCycle two_cycle(const Params& params, double eps_singular) {
  const Complex bm1 = params.beta - 1.0;
  if (std::abs(bm1) < kDegenerate) throw DegenerateError("two_cycle: beta = 1");
  const Complex c = params.alpha / bm1;
  if (std::abs(1.0 - 4.0 * c) < kDegenerate)
    throw NoDistinctCycleError("two_cycle: double root t = 0.5, no prime period-two solution");

  auto [t1, t2] = monic_quadratic_roots(Complex{-1.0}, c);
  TwoCycle cyc;
  cyc.phi = t1;
  cyc.psi = t2;
  if (ordered_before(cyc.psi, cyc.phi)) std::swap(cyc.phi, cyc.psi);

  // The displayed closed form; must agree with the quadratic as a set.
  Complex root = principal_sqrt(params.alpha * (4.0 - 4.0 * params.beta) +
                                (1.0 - params.beta) * (1.0 - params.beta));
  Complex phi_c = 0.5 - 0.5 * root / bm1;
  Complex psi_c = 0.5 + 0.5 * root / bm1;
  double mismatch = set_distance(cyc.phi, cyc.psi, phi_c, psi_c);
  double scale = std::max({1.0, std::abs(cyc.phi), std::abs(cyc.psi)});
  if (mismatch > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "closed-form roots differ from the quadratic by " << mismatch;
    cyc.warnings.push_back(msg.str());
  }

  if (std::abs(params.beta * cyc.psi + cyc.phi) < eps_singular ||
      std::abs(params.beta * cyc.phi + cyc.psi) < eps_singular) {
    cyc.spurious = true;
    cyc.warnings.emplace_back("a cycle denominator vanishes; not a solution of the recurrence");
  }
  return cyc;
}

T2Jacobian t2_jacobian(const Params& params, const TwoCycle& cycle, double eps_singular) {
  const Complex phi = cycle.phi, psi = cycle.psi;
  for (Complex den : {params.beta * psi + phi, params.beta * phi + psi})
    if (std::abs(den) < eps_singular)
      throw SingularError("t2_jacobian: vanishing denominator on the cycle", std::abs(den));

  T2Jacobian out;
  out.matrix = jacobian_T(params, psi, phi) * jacobian_T(params, phi, psi);

  const Complex h{kFdStep, 0.0};
  auto [gu_p, hu_p] = t_squared(params, phi + h, psi);
  auto [gu_m, hu_m] = t_squared(params, phi - h, psi);
  auto [gv_p, hv_p] = t_squared(params, phi, psi + h);
  auto [gv_m, hv_m] = t_squared(params, phi, psi - h);
  const double inv = 1.0 / (2.0 * kFdStep);
  out.fd_matrix = {{{(gu_p - gu_m) * inv, (gv_p - gv_m) * inv},
                    {(hu_p - hu_m) * inv, (hv_p - hv_m) * inv}}};
  out.fd_rel_error = relative_difference(out.matrix, out.fd_matrix);
  return out;
}

TwoCycleStability classify_jacobian(const Mat2& j) {
  TwoCycleStability st;
  st.chi = trace(j);
  st.det = det(j);
  auto [e1, e2] = eigenvalues(j);
  st.eigen_moduli = {std::abs(e1), std::abs(e2)};
  const StabilityClass by_eigen = classify_moduli(st.eigen_moduli.first, st.eigen_moduli.second);

  const double one_plus_det = 1.0 + std::abs(st.det);
  st.criterion_holds = std::abs(st.chi) < one_plus_det && one_plus_det < 2.0;
  st.verdict = by_eigen;
  if (st.criterion_holds && by_eigen != StabilityClass::locally_asymptotically_stable)
    st.criterion_contradicted = true;
  return st;
}

TwoCycleStability classify_two_cycle(const Params& params, const TwoCycle& cycle) {
  T2Jacobian j = t2_jacobian(params, cycle);
  TwoCycleStability st = classify_jacobian(j.matrix);
  st.fd_rel_error = j.fd_rel_error;
  return st;
}

namespace {

bool lands_on(const Orbit& orbit, const TwoCycle& cycle, double eps) {
  const auto* pc = std::get_if<outcome::PeriodicCycle>(&orbit.outcome);
  if (!pc || pc->period != 2) return false;
  return set_distance(pc->cycle[0], pc->cycle[1], cycle.phi, cycle.psi) < eps;
}

}  // namespace

CycleVerification verify_cycle_dynamically(const Params& params, const TwoCycle& cycle,
                                           const ToleranceConfig& cfg, std::uint64_t seed) {
  CycleVerification v;
  std::ostringstream detail;

  Orbit on = iterate(params, {cycle.phi, cycle.psi, 0}, cfg);
  v.on_cycle = lands_on(on, cycle, cfg.eps_cycle);
  detail << "from cycle: " << outcome_name(on.outcome);

  TwoCycleStability st;
  try {
    st = classify_two_cycle(params, cycle);
  } catch (const SingularError& e) {
    detail << "; jacobian: " << e.what();
    v.detail = detail.str();
    return v;
  }

  if (st.verdict == StabilityClass::locally_asymptotically_stable) {
    Rng rng(seed);
    double dir[4];
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& d : dir) {
        d = uniform(rng, -1.0, 1.0);
        norm += d * d;
      }
    } while (norm < 1e-6);
    const double scale = 1e-3 / std::sqrt(norm);
    OrbitState start{cycle.phi + scale * Complex{dir[0], dir[1]},
                     cycle.psi + scale * Complex{dir[2], dir[3]}, 0};
    Orbit pert = iterate(params, start, cfg);
    v.perturbed_returned = lands_on(pert, cycle, cfg.eps_cycle);
    detail << "; perturbed: " << outcome_name(pert.outcome);
  } else {
    detail << "; verdict " << stability_name(st.verdict) << ", perturbation skipped";
  }

  v.ok = v.on_cycle &&
         (st.verdict != StabilityClass::locally_asymptotically_stable || v.perturbed_returned);
  v.detail = detail.str();
  return v;
}

}  // namespace ratdyn
