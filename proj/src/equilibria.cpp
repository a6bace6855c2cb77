#include "ratdyn/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratdyn/errors.hpp"
#include "ratdyn/map.hpp"
#include "ratdyn/numeric.hpp"

namespace ratdyn {

namespace {

constexpr double kDegenerate = 1e-12;
constexpr double kBoundary = 1e-9;

// Equilibrium values (minus, plus) without degeneracy checks. The root of
// larger magnitude comes from the closed form, the other from the product
// z1 z2 = -alpha / (1 + beta).
std::pair<Complex, Complex> equilibrium_values(const Params& p) {
  Complex d = equilibrium_discriminant_root(p);
  Complex two_b1 = 2.0 * (1.0 + p.beta);
  Complex q_minus = 1.0 - d, q_plus = 1.0 + d;
  Complex product = -p.alpha / (1.0 + p.beta);
  if (std::abs(q_minus) >= std::abs(q_plus)) {
    Complex zm = q_minus / two_b1;
    return {zm, product / zm};
  }
  Complex zp = q_plus / two_b1;
  return {product / zp, zp};
}

Complex closed_form_c0(const Params& p, Branch branch) {
  Complex d = equilibrium_discriminant_root(p);
  Complex sign_d = branch == Branch::minus ? d : -d;
  return (1.0 + 2.0 * p.alpha + sign_d) / (2.0 * p.alpha + 2.0 * p.alpha * p.beta);
}

CharQuadratic linearize_impl(const Params& p, Complex eq, std::optional<Branch> branch) {
  Complex den = p.beta * eq + eq;
  bool closed_available = std::abs(p.alpha * (1.0 + p.beta)) >= kDegenerate;
  if (std::abs(den) < kDegenerate) {
    if (!closed_available)
      throw DegenerateError("linearize_at: alpha(1+beta) = 0 and denominator vanishes at z");
    throw SingularError("linearize_at: denominator vanishes at z", std::abs(den));
  }
  Complex den2 = den * den;
  Complex df_dcurr = -p.beta * (p.alpha + eq) / den2;
  Complex df_dprev = (p.beta * eq - p.alpha) / den2;
  CharQuadratic q = CharQuadratic::from_lemma_form(df_dcurr, df_dprev);

  if (closed_available) {
    if (!branch) {
      auto [zm, zp] = equilibrium_values(p);
      branch = std::abs(eq - zm) <= std::abs(eq - zp) ? Branch::minus : Branch::plus;
    }
    q.closed_c1 = p.beta / (1.0 + p.beta);
    q.closed_c0 = closed_form_c0(p, *branch);
    q.closed_form_discrepancy = std::max(relative_difference(*q.closed_c1, q.c1),
                                         relative_difference(*q.closed_c0, q.c0));
  }
  return q;
}

EquilibriumReport make_report(const Params& p, Complex value, Branch branch) {
  EquilibriumReport rep;
  rep.value = value;
  rep.branch = branch;
  Complex den = p.beta * value + value;
  if (std::abs(den) < kDegenerate) {
    rep.spurious = true;
    std::ostringstream msg;
    msg << "equilibrium " << branch_name(branch)
        << " makes the denominator vanish; not a solution of the recurrence";
    rep.warnings.push_back(msg.str());
    return rep;
  }
  rep.fixed_point_residual = std::abs((p.alpha + value) / den - value);
  rep.char_poly = linearize_impl(p, value, branch);
  auto roots = classify_roots(*rep.char_poly);
  rep.stability = roots.stability;
  rep.root_moduli = roots.root_moduli;
  rep.lemma_stability = classify_by_lemma(*rep.char_poly);
  rep.criterion_value = std::abs(1.0 - rep.char_poly->s);
  if (rep.char_poly->closed_c0 && rep.char_poly->closed_form_discrepancy > 1e-8) {
    std::ostringstream msg;
    msg << "closed-form coefficients differ from derivatives by "
        << rep.char_poly->closed_form_discrepancy;
    rep.warnings.push_back(msg.str());
  }
  return rep;
}

}  // namespace

CharQuadratic CharQuadratic::from_lemma_form(Complex r, Complex s) {
  CharQuadratic q;
  q.r = r;
  q.s = s;
  q.c1 = -r;
  q.c0 = -s;
  return q;
}

CharQuadratic CharQuadratic::from_coefficients(Complex c1, Complex c0) {
  return from_lemma_form(-c1, -c0);
}

std::string_view stability_name(StabilityClass c) {
  switch (c) {
    case StabilityClass::locally_asymptotically_stable: return "locally_asymptotically_stable";
    case StabilityClass::saddle: return "saddle";
    case StabilityClass::unstable: return "unstable";
    case StabilityClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view branch_name(Branch b) { return b == Branch::minus ? "minus" : "plus"; }

Complex equilibrium_discriminant_root(const Params& p) {
  return principal_sqrt(1.0 + 4.0 * p.alpha + 4.0 * p.alpha * p.beta);
}

std::array<EquilibriumReport, 2> equilibria(const Params& params) {
  if (std::abs(1.0 + params.beta) < kDegenerate) {
    throw DegenerateError("beta = -1: equilibrium equation degenerates to -z - alpha = 0",
                          -params.alpha);
  }
  auto [zm, zp] = equilibrium_values(params);
  return {make_report(params, zm, Branch::minus), make_report(params, zp, Branch::plus)};
}

CharQuadratic linearize_at(const Params& params, Complex eq) {
  return linearize_impl(params, eq, std::nullopt);
}

StabilityClass classify_by_lemma(const CharQuadratic& q) {
  double r = std::abs(q.r);
  double one_minus_s = std::abs(1.0 - q.s);
  if (r < one_minus_s && one_minus_s < 2.0) return StabilityClass::locally_asymptotically_stable;
  if (r > one_minus_s) return StabilityClass::saddle;
  return StabilityClass::inconclusive;
}

RootClassification classify_roots(const CharQuadratic& q) {
  auto roots = monic_quadratic_roots(-q.r, -q.s);
  double m1 = std::abs(roots.first), m2 = std::abs(roots.second);
  if (m2 > m1) {
    std::swap(roots.first, roots.second);
    std::swap(m1, m2);
  }
  StabilityClass cls;
  if (std::abs(m1 - 1.0) < kBoundary || std::abs(m2 - 1.0) < kBoundary)
    cls = StabilityClass::inconclusive;
  else if (m1 < 1.0)
    cls = StabilityClass::locally_asymptotically_stable;
  else if (m2 < 1.0)
    cls = StabilityClass::saddle;
  else
    cls = StabilityClass::unstable;
  return {cls, {m1, m2}, roots};
}

double stability_margin(const Params& params, Branch branch) {
  if (std::abs(params.alpha * (1.0 + params.beta)) < kDegenerate)
    throw DegenerateError("stability_margin: alpha(1+beta) = 0");
  return std::abs(1.0 + closed_form_c0(params, branch));
}

double saddle_margin(const Params& params, Branch branch) {
  double m = stability_margin(params, branch);
  return std::abs(params.beta / (1.0 + params.beta)) - m;
}

SpecialCaseReport special_case_alpha_eq_beta(Complex alpha) {
  if (std::abs(alpha) < kDegenerate || std::abs(1.0 + alpha) < kDegenerate)
    throw DegenerateError("alpha = beta requires alpha not in {0, -1}");
  Params p{alpha, alpha};
  auto [zm, zp] = equilibrium_values(p);
  // Order as (1, -alpha/(1+alpha)).
  bool minus_is_one = std::abs(zm - 1.0) <= std::abs(zp - 1.0);
  SpecialCaseReport rep;
  rep.equilibria = minus_is_one ? std::array{make_report(p, zm, Branch::minus),
                                             make_report(p, zp, Branch::plus)}
                                : std::array{make_report(p, zp, Branch::plus),
                                             make_report(p, zm, Branch::minus)};
  rep.printed_lower = std::abs(1.0 + 1.0 / (1.0 + alpha));
  rep.printed_middle = std::abs(1.0 + 1.0 / (alpha + alpha * alpha));
  rep.printed_condition = rep.printed_lower < rep.printed_middle && rep.printed_middle < 2.0;
  rep.printed_r_modulus = std::abs((2.0 + alpha) / (1.0 + alpha));
  return rep;
}

}  // namespace ratdyn
