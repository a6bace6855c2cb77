#include "ratdyn/errors.hpp"
#include "ratdyn/map.hpp"
#include "ratdyn/period_two.hpp"

namespace ratdyn {

KnownAttractors known_attractors(const Params& params) {
  KnownAttractors known;
  try {
    auto eq = equilibria(params);
    if (!eq[0].spurious) known.equilibrium_1 = eq[0].value;
    if (!eq[1].spurious) known.equilibrium_2 = eq[1].value;
  } catch (const DegenerateError&) {
  }
  try {
    TwoCycle c = two_cycle(params);
    if (!c.spurious) known.two_cycle = std::pair{c.phi, c.psi};
  } catch (const Error&) {
  }
  return known;
}

}  // namespace ratdyn
