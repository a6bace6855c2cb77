#pragma once

#include <vector>

#include "ratdyn/types.hpp"

namespace ratdyn {

struct PeriodTwoRow {
  int row = 0;
  Params params;
  bool condition_mark = false;
  Complex phi;
  Complex psi;
};

struct ChaoticRow {
  int row = 0;
  Params params;
  bool condition_mark = false;
  double lyapunov = 0.0;
};

// Published reference rows, parsed from the embedded fixture files.
const std::vector<PeriodTwoRow>& period_two_table();
const std::vector<ChaoticRow>& chaotic_table();

}  // namespace ratdyn
