#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/map.hpp"
#include "ratdyn/random.hpp"

using namespace ratdyn;

namespace {

ToleranceConfig short_run(long iters, long transient) {
  ToleranceConfig cfg;
  cfg.max_iters = iters;
  cfg.transient_discard = transient;
  return cfg;
}

}  // namespace

TEST_CASE("step matches the recurrence") {
  Params p{{0.3, -0.2}, {1.5, 0.7}};
  OrbitState s{{0.2, 0.1}, {-0.4, 0.9}, 0};
  CHECK(std::abs(step(p, s) - oracle::f(p.alpha, p.beta, s.z_prev, s.z_curr)) < 1e-15);
  OrbitState next = advance(p, s);
  CHECK(next.z_prev == s.z_curr);
  CHECK(next.n == 1);
}

TEST_CASE("zero parameters send every iterate to one") {
  Params p{{0, 0}, {0, 0}};
  Orbit o = iterate(p, {{0.3, 0}, {0.5, 0.2}, 0}, short_run(100, 10));
  for (Complex z : o.points) CHECK(z == Complex{1.0, 0.0});
  REQUIRE(std::holds_alternative<outcome::ConvergedTo>(o.outcome));
}

TEST_CASE("vanishing denominator") {
  Params p{{0.5, 0}, {1, 0}};
  OrbitState s{{1, 0}, {-1, 0}, 0};
  CHECK_THROWS_AS(step(p, s), SingularError);
  Orbit o = iterate(p, s, {});
  REQUIRE(std::holds_alternative<outcome::Singular>(o.outcome));
  CHECK(std::get<outcome::Singular>(o.outcome).step == 1);
  CHECK(o.points.empty());
}

TEST_CASE("escape past the radius is unbounded") {
  Params p{{0.5, 0}, {1, 0}};
  Orbit o = iterate(p, {{1, 0}, {-1 + 1e-10, 0}, 0}, {});
  REQUIRE(std::holds_alternative<outcome::Unbounded>(o.outcome));
  CHECK(std::get<outcome::Unbounded>(o.outcome).step == 1);
}

TEST_CASE("orbit points obey the recurrence") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Params p{uniform_box(rng, 2.0), uniform_box(rng, 2.0)};
    OrbitState s{uniform_box(rng, 1.0), uniform_box(rng, 1.0), 0};
    Orbit o = iterate(p, s, short_run(300, 100));
    Complex prev = s.z_prev, curr = s.z_curr;
    for (Complex z : o.points) {
      CHECK(std::abs(z - oracle::f(p.alpha, p.beta, prev, curr)) <= 1e-12 * std::max(1.0, std::abs(z)));
      prev = curr;
      curr = z;
    }
    CHECK(o.iterations_used == static_cast<long>(o.points.size()));
  }
}

TEST_CASE("stable two-cycle is detected as period two") {
  Params p{{0.78287, 0.69378}, {0.019604, 2.5296}};
  Orbit o = iterate(p, {{0.1, -0.3}, {0.9, 0.3}, 0}, {});
  REQUIRE(std::holds_alternative<outcome::PeriodicCycle>(o.outcome));
  const auto& c = std::get<outcome::PeriodicCycle>(o.outcome);
  CHECK(c.period == 2);
  CHECK(std::abs(c.cycle[0] + c.cycle[1] - 1.0) < 1e-6);

  RefinedOutcome r = classify_orbit(o, known_attractors(p), 1e-5);
  CHECK(r.label == OrbitLabel::known_two_cycle);
  CHECK(r.distance < 1e-5);
}

TEST_CASE("convergent orbit is matched to an equilibrium") {
  Params p{{1, 0}, {1, 0}};
  Orbit o = iterate(p, {{0.95, 0.02}, {1.03, -0.01}, 0}, {});
  REQUIRE(std::holds_alternative<outcome::ConvergedTo>(o.outcome));
  KnownAttractors known = known_attractors(p);
  REQUIRE(known.equilibrium_1);
  REQUIRE(known.equilibrium_2);
  RefinedOutcome r = classify_orbit(o, known, 1e-5);
  CHECK((r.label == OrbitLabel::equilibrium_1 || r.label == OrbitLabel::equilibrium_2));
  CHECK(r.distance < 1e-6);
}

TEST_CASE("detect_cycle") {
  std::vector<Complex> tail;
  const Complex three[] = {{0.1, 0}, {0.5, 0.2}, {-0.3, 0.4}};
  for (int i = 0; i < 12; ++i) tail.push_back(three[i % 3]);

  SUBCASE("period three") {
    auto c = detect_cycle(tail, 6, 1e-9);
    REQUIRE(c);
    CHECK(c->period == 3);
    CHECK(c->cycle.size() == 3u);
  }
  SUBCASE("period one is convergence, not a cycle") {
    std::vector<Complex> flat(12, Complex{0.2, 0.2});
    CHECK_FALSE(detect_cycle(flat, 6, 1e-9));
  }
  SUBCASE("aperiodic tail") {
    std::vector<Complex> walk;
    for (int i = 0; i < 12; ++i) walk.push_back({0.1 * i * i, 0.0});
    CHECK_FALSE(detect_cycle(walk, 6, 1e-9));
  }
  SUBCASE("short tail") { CHECK_THROWS_AS(detect_cycle(std::span(tail).first(5), 6, 1e-9), InsufficientDataError); }
}

TEST_CASE("analytic Jacobian of T matches central differences") {
  Rng rng(11);
  int checked = 0;
  while (checked < 100) {
    Params p{uniform_box(rng, 3.0), uniform_box(rng, 3.0)};
    Complex u = uniform_box(rng, 2.0), v = uniform_box(rng, 2.0);
    if (std::abs(denominator(p, u, v)) < 0.1) continue;
    Mat2 j = jacobian_T(p, u, v);
    oracle::M2 ref = oracle::jacobian_T(p.alpha, p.beta, u, v);
    CHECK(oracle::rel_error(j, ref) < 1e-6);
    ++checked;
  }
}

TEST_CASE("tolerance validation") {
  ToleranceConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eps_singular = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.transient_discard = cfg.max_iters;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.max_period = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("label names round-trip") {
  for (int i = 0; i < kOrbitLabelCount; ++i) {
    auto label = static_cast<OrbitLabel>(i);
    auto back = label_from_name(label_name(label));
    REQUIRE(back);
    CHECK(*back == label);
  }
  CHECK_FALSE(label_from_name("nonsense"));
}
