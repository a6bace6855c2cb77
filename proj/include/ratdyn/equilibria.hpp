#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratdyn/types.hpp"

namespace ratdyn {

// lambda^2 - r lambda - s = 0, equivalently lambda^2 + c1 lambda + c0 = 0.
struct CharQuadratic {
  Complex r;
  Complex s;
  Complex c1;
  Complex c0;

  // Closed-form coefficients, present when alpha (1 + beta) != 0.
  std::optional<Complex> closed_c1;
  std::optional<Complex> closed_c0;
  // Largest relative mismatch between closed form and partial derivatives.
  double closed_form_discrepancy = 0.0;

  static CharQuadratic from_lemma_form(Complex r, Complex s);
  static CharQuadratic from_coefficients(Complex c1, Complex c0);
};

enum class StabilityClass { locally_asymptotically_stable, saddle, unstable, inconclusive };

std::string_view stability_name(StabilityClass c);

// Sign in front of the square root in (1 -+ sqrt(1 + 4a + 4ab)) / (2 (1 + b)).
enum class Branch { minus, plus };

std::string_view branch_name(Branch b);

struct EquilibriumReport {
  Complex value;
  Branch branch = Branch::minus;
  // Empty when the equilibrium sits on the singular set.
  std::optional<CharQuadratic> char_poly;
  std::pair<double, double> root_moduli{0.0, 0.0};
  StabilityClass stability = StabilityClass::inconclusive;   // from the roots
  StabilityClass lemma_stability = StabilityClass::inconclusive;
  double criterion_value = 0.0;  // |1 - s|
  double fixed_point_residual = 0.0;
  bool spurious = false;
  std::vector<std::string> warnings;
};

// sqrt(1 + 4 alpha + 4 alpha beta), principal branch.
Complex equilibrium_discriminant_root(const Params& params);

// Throws DegenerateError (carrying the linear root) when beta = -1.
std::array<EquilibriumReport, 2> equilibria(const Params& params);

// Linearization of f at (eq, eq) from the partial derivatives. Closed-form
// coefficients are attached and compared when alpha (1 + beta) != 0.
CharQuadratic linearize_at(const Params& params, Complex eq);

StabilityClass classify_by_lemma(const CharQuadratic& q);

struct RootClassification {
  StabilityClass stability;
  std::pair<double, double> root_moduli;
  std::pair<Complex, Complex> roots;
};

RootClassification classify_roots(const CharQuadratic& q);

// |1 + (1 + 2a +- sqrt(1 + 4a + 4ab)) / (2a + 2ab)|. The minus branch (z1)
// takes the + sign.
double stability_margin(const Params& params, Branch branch);

// |beta / (1 + beta)| - stability_margin(params, branch)
double saddle_margin(const Params& params, Branch branch);

struct SpecialCaseReport {
  // value 1 and -alpha / (1 + alpha)
  std::array<EquilibriumReport, 2> equilibria;
  // |1 + 1/(1+a)|, |1 + 1/(a+a^2)| and whether lower < middle < 2 holds.
  double printed_lower = 0.0;
  double printed_middle = 0.0;
  bool printed_condition = false;
  // |(2 + a) / (1 + a)|, the |r| the printed linearization would use.
  double printed_r_modulus = 0.0;
};

// alpha = beta. Throws DegenerateError for alpha in {0, -1}.
SpecialCaseReport special_case_alpha_eq_beta(Complex alpha);

}  // namespace ratdyn
