#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ratdyn/equilibria.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/map.hpp"
#include "ratdyn/numeric.hpp"
#include "ratdyn/random.hpp"

using namespace ratdyn;

namespace {

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) < tol; }

bool same_pair(std::pair<Complex, Complex> a, std::pair<Complex, Complex> b, double tol) {
  return (near(a.first, b.first, tol) && near(a.second, b.second, tol)) ||
         (near(a.first, b.second, tol) && near(a.second, b.first, tol));
}

}  // namespace

TEST_CASE("principal square root") {
  CHECK(principal_sqrt({-4, 0}) == Complex{0, 2});
  CHECK(principal_sqrt({-4, -0.0}) == Complex{0, 2});
  CHECK(principal_sqrt({4, 0}) == Complex{2, 0});
  Complex r = principal_sqrt({3, -4});
  CHECK(r.real() >= 0);
  CHECK(near(r * r, {3, -4}, 1e-14));
}

TEST_CASE("monic quadratic roots agree with the textbook formula") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Complex b = uniform_box(rng, 5.0), c = uniform_box(rng, 5.0);
    auto got = monic_quadratic_roots(b, c);
    CHECK(std::abs(got.first) >= std::abs(got.second));
    CHECK(same_pair(got, oracle::quadratic_roots(b, c), 1e-10));
  }
  SUBCASE("no cancellation for a tiny root") {
    auto [big, small] = monic_quadratic_roots({-1e8, 0}, {1, 0});
    CHECK(near(big, {1e8, 0}, 1e-6));
    CHECK(std::abs(small - 1e-8) < 1e-22);
  }
  SUBCASE("zero constant term") {
    auto [x1, x2] = monic_quadratic_roots({-2, 0}, {0, 0});
    CHECK(x1 == Complex{2, 0});
    CHECK(x2 == Complex{0, 0});
  }
}

TEST_CASE("equilibria are fixed points") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    Params p{uniform_box(rng, 10.0), uniform_box(rng, 10.0)};
    auto eqs = equilibria(p);
    CHECK(same_pair({eqs[0].value, eqs[1].value}, oracle::equilibria(p.alpha, p.beta),
                    1e-9 * (1.0 + std::abs(eqs[0].value) + std::abs(eqs[1].value))));
    for (const auto& e : eqs) {
      if (e.spurious) continue;
      CHECK(e.fixed_point_residual < 1e-10);
      CHECK(std::abs(oracle::f(p.alpha, p.beta, e.value, e.value) - e.value) <
            1e-10 * std::max(1.0, std::abs(e.value)));
    }
  }
}

TEST_CASE("alpha = beta = 1") {
  auto eqs = equilibria({{1, 0}, {1, 0}});
  CHECK(same_pair({eqs[0].value, eqs[1].value}, {{1, 0}, {-0.5, 0}}, 1e-14));
  CHECK(eqs[0].branch == Branch::minus);
  CHECK(near(eqs[0].value, {-0.5, 0}, 1e-14));
}

TEST_CASE("beta = -1 is degenerate and carries the linear root") {
  try {
    equilibria({{0.5, 0.25}, {-1, 0}});
    FAIL("expected DegenerateError");
  } catch (const DegenerateError& e) {
    REQUIRE(e.linear_root);
    CHECK(near(*e.linear_root, {-0.5, -0.25}, 1e-15));
  }
}

TEST_CASE("linearization matches finite differences and the closed form") {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Params p{uniform_box(rng, 4.0), uniform_box(rng, 4.0)};
    for (const auto& e : equilibria(p)) {
      if (!e.char_poly) continue;
      oracle::M2 ref = oracle::jacobian_T(p.alpha, p.beta, e.value, e.value);
      CHECK(std::abs(e.char_poly->s - ref[1][0]) < 1e-6 * std::max(1.0, std::abs(ref[1][0])));
      CHECK(std::abs(e.char_poly->r - ref[1][1]) < 1e-6 * std::max(1.0, std::abs(ref[1][1])));
      CHECK(e.char_poly->c1 == -e.char_poly->r);
      CHECK(e.char_poly->c0 == -e.char_poly->s);
      if (e.char_poly->closed_c1) CHECK(e.char_poly->closed_form_discrepancy < 1e-8);
    }
  }
}

TEST_CASE("root classification is the spectral radius test") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    Params p{uniform_box(rng, 5.0), uniform_box(rng, 5.0)};
    for (const auto& e : equilibria(p)) {
      if (!e.char_poly) continue;
      oracle::M2 j = oracle::jacobian_T(p.alpha, p.beta, e.value, e.value);
      double rho = oracle::spectral_radius(j);
      if (std::abs(rho - 1.0) < 1e-6) continue;
      if (rho < 1.0) CHECK(e.stability == StabilityClass::locally_asymptotically_stable);
      else CHECK(e.stability != StabilityClass::locally_asymptotically_stable);
    }
  }
}

TEST_CASE("lemma classification") {
  CHECK(classify_by_lemma(CharQuadratic::from_lemma_form({0.2, 0}, {0.1, 0})) ==
        StabilityClass::locally_asymptotically_stable);
  CHECK(classify_by_lemma(CharQuadratic::from_lemma_form({3, 0}, {0.1, 0})) == StabilityClass::saddle);
  // Over the complex numbers the lemma's stable region contains saddles: r = 0,
  // s = 1.5i has roots of modulus sqrt(1.5).
  auto q = CharQuadratic::from_lemma_form({0, 0}, {0, 1.5});
  CHECK(classify_by_lemma(q) == StabilityClass::locally_asymptotically_stable);
  RootClassification rc = classify_roots(q);
  CHECK(rc.stability == StabilityClass::unstable);
  CHECK(std::abs(rc.root_moduli.first - std::sqrt(1.5)) < 1e-12);
}

TEST_CASE("stability expression spot values") {
  CHECK(stability_margin({{-0.82781, 0.224354}, {0.492467, -0.333602}}, Branch::minus) ==
        doctest::Approx(1.66614).epsilon(1e-4));
  CHECK(stability_margin({{0.04008, -0.237697}, {0.598157, 0.0345986}}, Branch::plus) ==
        doctest::Approx(0.834925).epsilon(1e-4));
  CHECK(saddle_margin({{0.00794746, 0.0120667}, {1.94598, 7.32387}}, Branch::plus) ==
        doctest::Approx(0.959948).epsilon(1e-4));
  CHECK_THROWS_AS(stability_margin({{0, 0}, {1, 0}}, Branch::minus), DegenerateError);
}

TEST_CASE("alpha = beta special case") {
  SpecialCaseReport r = special_case_alpha_eq_beta({1, 0});
  CHECK(near(r.equilibria[0].value, {1, 0}, 1e-14));
  CHECK(near(r.equilibria[1].value, {-0.5, 0}, 1e-14));
  for (const auto& e : r.equilibria) CHECK(e.fixed_point_residual < 1e-12);
  CHECK_THROWS_AS(special_case_alpha_eq_beta({-1, 0}), DegenerateError);
  CHECK_THROWS_AS(special_case_alpha_eq_beta({0, 0}), DegenerateError);
}

TEST_CASE("names") {
  CHECK(stability_name(StabilityClass::saddle) == "saddle");
  CHECK(branch_name(Branch::plus) == "plus");
}
