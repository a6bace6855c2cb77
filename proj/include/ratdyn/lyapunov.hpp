#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ratdyn/map.hpp"

namespace ratdyn {

struct LyapunovEstimate {
  double lambda_max = 0.0;  // nats per iteration
  long iterations = 0;
  long transient_discarded = 0;
  // Running average after each decimation block; last entry is lambda_max.
  std::vector<double> running_series;
  long series_stride = 0;
  bool converged = false;
  OrbitOutcome orbit_outcome = outcome::Undecided{};
  double min_tangent_norm = 0.0;
  double max_tangent_norm = 0.0;
};

inline constexpr long kDefaultLyapunovSteps = 50000;
inline constexpr double kChaosThreshold = 0.01;
// Off both coordinate axes, so a Jacobian with a zero row or column cannot
// annihilate it on the first step.
inline constexpr std::array<Complex, 2> kGenericTangent{Complex{0.8, 0.0}, Complex{0.36, 0.48}};

// Largest exponent by evolving a complex tangent 2-vector under J_T with
// per-step renormalization. The norm is the Euclidean norm of the four real
// components. Throws OrbitDiedError if the orbit goes singular or unbounded.
LyapunovEstimate lyapunov_max(const Params& params, const OrbitState& initial,
                              const ToleranceConfig& cfg, long n_steps = kDefaultLyapunovSteps,
                              std::array<Complex, 2> initial_tangent = kGenericTangent);

// Central-difference Jacobian of T. Derivatives along the real and imaginary
// axes are both taken; cr_mismatch is their largest disagreement.
struct FdJacobian {
  Mat2 matrix;
  double cr_mismatch = 0.0;
};

FdJacobian jacobian_fd(const Params& params, const OrbitState& state, double step = 1e-6);

// lambda_max > threshold on a bounded, non-convergent, non-periodic orbit.
// Throws NotConvergedError when the estimate failed its drift test.
bool classify_chaotic(const LyapunovEstimate& estimate, double threshold = kChaosThreshold);

}  // namespace ratdyn
