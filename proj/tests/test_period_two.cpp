#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/period_two.hpp"
#include "ratdyn/random.hpp"
#include "ratdyn/reference_data.hpp"

using namespace ratdyn;

TEST_CASE("reference rows reproduce") {
  const auto& rows = period_two_table();
  REQUIRE(rows.size() == 11u);
  for (const auto& row : rows) {
    CAPTURE(row.row);
    TwoCycle c = two_cycle(row.params);
    CHECK(std::abs(c.phi.real() - row.phi.real()) < 1e-3);
    CHECK(std::abs(c.phi.imag() - row.phi.imag()) < 1e-3);
    CHECK(std::abs(c.psi.real() - row.psi.real()) < 1e-3);
    CHECK(std::abs(c.psi.imag() - row.psi.imag()) < 1e-3);
    CHECK(c.warnings.empty());
  }
}

TEST_CASE("Vieta relations and the cycle property") {
  Rng rng(21);
  int checked = 0;
  while (checked < 300) {
    Params p{uniform_box(rng, 3.0), uniform_box(rng, 3.0)};
    TwoCycle c;
    try {
      c = two_cycle(p);
    } catch (const Error&) {
      continue;
    }
    if (c.spurious) continue;
    Complex k = p.alpha / (p.beta - 1.0);
    double scale = std::max({1.0, std::abs(c.phi), std::abs(c.psi)});
    CHECK(std::abs(c.phi + c.psi - 1.0) < 1e-10 * scale);
    CHECK(std::abs(c.phi * c.psi - k) < 1e-10 * scale * scale);
    // (phi, psi) is carried to (psi, phi) by T
    if (std::abs(denominator(p, c.phi, c.psi)) > 1e-6 && std::abs(denominator(p, c.psi, c.phi)) > 1e-6) {
      CHECK(std::abs(oracle::f(p.alpha, p.beta, c.phi, c.psi) - c.phi) < 1e-8 * scale);
      CHECK(std::abs(oracle::f(p.alpha, p.beta, c.psi, c.phi) - c.psi) < 1e-8 * scale);
    }
    ++checked;
  }
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(two_cycle({{0.5, 0}, {1, 0}}), DegenerateError);
  // alpha / (beta - 1) = 1/4 gives the double root 1/2
  CHECK_THROWS_AS(two_cycle({{0.25, 0.5}, {2, 2}}), NoDistinctCycleError);
}

TEST_CASE("chain-rule Jacobian of T squared matches finite differences") {
  Rng rng(23);
  int checked = 0;
  while (checked < 100) {
    Params p{uniform_box(rng, 3.0), uniform_box(rng, 3.0)};
    TwoCycle c;
    try {
      c = two_cycle(p);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(denominator(p, c.phi, c.psi)) < 0.1 || std::abs(denominator(p, c.psi, c.phi)) < 0.1) continue;
    T2Jacobian j = t2_jacobian(p, c);
    oracle::M2 ref = oracle::jacobian_T2(p.alpha, p.beta, c.phi, c.psi);
    CHECK(oracle::rel_error(j.matrix, ref) < 1e-6);
    CHECK(j.fd_rel_error < 1e-6);
    ++checked;
  }
}

TEST_CASE("classification follows the eigenvalues") {
  SUBCASE("criterion holds but one eigenvalue is outside") {
    Mat2 m{{{Complex{1.2, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{-0.7, 0}}}};
    TwoCycleStability s = classify_jacobian(m);
    CHECK(s.criterion_holds);
    CHECK(s.criterion_contradicted);
    CHECK(s.verdict == StabilityClass::saddle);
  }
  SUBCASE("contracting") {
    Mat2 m{{{Complex{0.3, 0.1}, Complex{0.2, 0}}, {Complex{0, 0.1}, Complex{-0.4, 0}}}};
    TwoCycleStability s = classify_jacobian(m);
    CHECK(s.verdict == StabilityClass::locally_asymptotically_stable);
    CHECK_FALSE(s.criterion_contradicted);
    CHECK(s.eigen_moduli.first < 1.0);
  }
  SUBCASE("random matrices: verdict stable iff spectral radius below one") {
    Rng rng(29);
    for (int i = 0; i < 500; ++i) {
      Mat2 m{{{uniform_box(rng, 1.0), uniform_box(rng, 1.0)}, {uniform_box(rng, 1.0), uniform_box(rng, 1.0)}}};
      double rho = oracle::spectral_radius(m);
      if (std::abs(rho - 1.0) < 1e-6) continue;
      TwoCycleStability s = classify_jacobian(m);
      CHECK((s.verdict == StabilityClass::locally_asymptotically_stable) == (rho < 1.0));
    }
  }
}

TEST_CASE("reference rows are stable and verified by iteration") {
  for (const auto& row : period_two_table()) {
    CAPTURE(row.row);
    TwoCycle c = two_cycle(row.params);
    TwoCycleStability s = classify_two_cycle(row.params, c);
    CHECK(s.verdict == StabilityClass::locally_asymptotically_stable);
    CycleVerification v = verify_cycle_dynamically(row.params, c, {}, 0);
    CHECK(v.on_cycle);
    CHECK(v.ok);
  }
}

TEST_CASE("a saddle cycle is not verified") {
  Params p{{1, 0}, {1, 1}};
  TwoCycle c = two_cycle(p);
  TwoCycleStability s = classify_two_cycle(p, c);
  CHECK(s.verdict == StabilityClass::saddle);
  CHECK(std::abs(s.chi) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  CHECK(std::abs(s.det) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
  CycleVerification v = verify_cycle_dynamically(p, c, {}, 0);
  CHECK_FALSE(v.ok);
}
