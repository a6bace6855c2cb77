#include "ratdyn/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ratdyn/errors.hpp"

namespace ratdyn {

namespace {

constexpr long kSeriesPoints = 500;

double tangent_norm(Complex a, Complex b) { return std::sqrt(std::norm(a) + std::norm(b)); }

void check_alive(const Params& params, Complex u, Complex v, long k, const ToleranceConfig& cfg) {
  Complex den = params.beta * v + u;
  if (!(std::abs(den) >= cfg.eps_singular)) {
    std::ostringstream msg;
    msg << "orbit hit the singular set at step " << k;
    throw OrbitDiedError(msg.str(), k);
  }
}

}  // namespace

LyapunovEstimate lyapunov_max(const Params& params, const OrbitState& initial,
                              const ToleranceConfig& cfg, long n_steps,
                              std::array<Complex, 2> initial_tangent) {
  cfg.validate();
  if (n_steps < 1000) throw InvalidArgument("lyapunov_max: n_steps must be >= 1000");
  double w_norm = tangent_norm(initial_tangent[0], initial_tangent[1]);
  if (!(w_norm > 0.0) || !std::isfinite(w_norm))
    throw InvalidArgument("lyapunov_max: initial tangent must be nonzero and finite");

  LyapunovEstimate est;
  est.iterations = n_steps;
  est.transient_discarded = cfg.transient_discard;
  est.series_stride = std::max(1L, (n_steps + kSeriesPoints - 1) / kSeriesPoints);

  Complex u = initial.z_prev, v = initial.z_curr;
  long k = 0;
  auto advance_state = [&] {
    ++k;
    check_alive(params, u, v, k, cfg);
    Complex z = (params.alpha + u) / (params.beta * v + u);
    if (!is_finite(z) || std::abs(z) > cfg.radius_unbounded) {
      std::ostringstream msg;
      msg << "orbit escaped radius " << cfg.radius_unbounded << " at step " << k;
      throw OrbitDiedError(msg.str(), k);
    }
    u = v;
    v = z;
  };

  for (long i = 0; i < cfg.transient_discard; ++i) advance_state();

  Complex w0 = initial_tangent[0] / w_norm, w1 = initial_tangent[1] / w_norm;
  double log_sum = 0.0;
  est.min_tangent_norm = std::numeric_limits<double>::infinity();
  est.max_tangent_norm = 0.0;
  est.running_series.reserve(static_cast<std::size_t>(kSeriesPoints + 1));

  for (long i = 1; i <= n_steps; ++i) {
    Mat2 j = jacobian_T(params, u, v);
    Complex n0 = j[0][0] * w0 + j[0][1] * w1;
    Complex n1 = j[1][0] * w0 + j[1][1] * w1;
    double growth = tangent_norm(n0, n1);
    if (!(growth > 0.0) || !std::isfinite(growth))
      throw NonFiniteError("lyapunov_max: tangent norm left the representable range");
    est.min_tangent_norm = std::min(est.min_tangent_norm, growth);
    est.max_tangent_norm = std::max(est.max_tangent_norm, growth);
    log_sum += std::log(growth);
    w0 = n0 / growth;
    w1 = n1 / growth;
    advance_state();
    if (i % est.series_stride == 0 && i != n_steps)
      est.running_series.push_back(log_sum / static_cast<double>(i));
  }
  est.lambda_max = log_sum / static_cast<double>(n_steps);
  est.running_series.push_back(est.lambda_max);

  const auto& series = est.running_series;
  auto quartile_begin = series.begin() + static_cast<long>(series.size() * 3 / 4);
  auto [lo, hi] = std::minmax_element(quartile_begin, series.end());
  est.converged = (*hi - *lo) < 0.05 * std::max(1.0, std::abs(est.lambda_max));

  ToleranceConfig orbit_cfg = cfg;
  orbit_cfg.max_iters = cfg.transient_discard + n_steps;
  est.orbit_outcome = iterate(params, initial, orbit_cfg).outcome;
  return est;
}

FdJacobian jacobian_fd(const Params& params, const OrbitState& state, double step) {
  const Complex u = state.z_prev, v = state.z_curr;
  double den = std::abs(params.beta * v + u);
  if (!(den > 10.0 * step))
    throw SingularError("jacobian_fd: too close to the singular set", den);

  auto f = [&](Complex uu, Complex vv) { return (params.alpha + uu) / (params.beta * vv + uu); };
  auto central = [&](Complex du, Complex dv) {
    // T = (v, f); returns d/du-direction column
    Complex first = ((v + dv) - (v - dv)) / (2.0 * step);
    Complex second = (f(u + du, v + dv) - f(u - du, v - dv)) / (2.0 * step);
    return std::pair{first, second};
  };

  const Complex re{step, 0.0}, im{0.0, step};
  auto [t0u, f_u] = central(re, {});
  auto [t0v, f_v] = central({}, re);
  // Along the imaginary axis the directional derivative is i times the
  // complex derivative.
  auto [t0u_i, f_u_i] = central(im, {});
  auto [t0v_i, f_v_i] = central({}, im);
  const Complex i_unit{0.0, 1.0};

  FdJacobian out;
  out.matrix = {{{t0u, t0v}, {f_u, f_v}}};
  Mat2 along_imag = {{{t0u_i / i_unit, t0v_i / i_unit}, {f_u_i / i_unit, f_v_i / i_unit}}};
  out.cr_mismatch = relative_difference(along_imag, out.matrix);
  return out;
}

bool classify_chaotic(const LyapunovEstimate& estimate, double threshold) {
  if (!estimate.converged)
    throw NotConvergedError("classify_chaotic: running average failed the drift test");
  return estimate.lambda_max > threshold &&
         std::holds_alternative<outcome::Undecided>(estimate.orbit_outcome);
}

}  // namespace ratdyn
