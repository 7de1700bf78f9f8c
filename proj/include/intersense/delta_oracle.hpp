// Numerical solution of the renewal recursions for the expected free time
// of an alternating busy/free channel with arbitrary sojourn distributions.
//
// Used as an independent check on the exponential closed forms in
// renewal.hpp; the optimizers never call into this.

#ifndef INTERSENSE_DELTA_ORACLE_HPP_
#define INTERSENSE_DELTA_ORACLE_HPP_

#include <functional>
#include <optional>
#include <vector>

namespace intersense {

struct SojournDistribution {
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  double mean = 0.0;

  static SojournDistribution exponential(double rate);
  /// Sum of `shape` iid exponentials with the given per-stage rate.
  static SojournDistribution erlang(int shape, double rate);
  static SojournDistribution uniform(double lo, double hi);
};

enum class StartState {
  kFreeEquilibrium,  // free at 0, residual free time from the equilibrium law
  kBusyEquilibrium,
  kFreeFresh,  // a free period begins exactly at 0
  kBusyFresh,
};

struct OracleOptions {
  /// Quadrature step; defaults to min(mean sojourn) / 1000. Must be > 0.
  std::optional<double> step;
};

/// Expected free time over [0, t] for the given start condition, by a
/// trapezoidal forward sweep of the coupled Volterra equations.
double delta_numeric_oracle(const SojournDistribution& free_dist,
                            const SojournDistribution& busy_dist, double t,
                            StartState start, OracleOptions opts = {});

/// Same sweep, returning the curve on the uniform grid 0, h, ..., n*h = t.
std::vector<double> delta_numeric_curve(const SojournDistribution& free_dist,
                                        const SojournDistribution& busy_dist,
                                        double t, StartState start,
                                        OracleOptions opts = {});

}  // namespace intersense

#endif  // INTERSENSE_DELTA_ORACLE_HPP_
