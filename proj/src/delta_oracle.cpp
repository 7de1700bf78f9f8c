#include "intersense/delta_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "intersense/errors.hpp"

namespace intersense {

SojournDistribution SojournDistribution::exponential(double rate) {
  if (!(rate > 0)) throw InvalidArgument("exponential rate must be > 0");
  return {[rate](double x) { return x < 0 ? 0.0 : rate * std::exp(-rate * x); },
          [rate](double x) { return x < 0 ? 0.0 : -std::expm1(-rate * x); },
          1.0 / rate};
}

SojournDistribution SojournDistribution::erlang(int shape, double rate) {
  if (shape < 1 || !(rate > 0)) {
    throw InvalidArgument("erlang needs shape >= 1 and rate > 0");
  }
  auto pdf = [shape, rate](double x) {
    if (x < 0) return 0.0;
    if (x == 0) return shape == 1 ? rate : 0.0;
    return std::exp(shape * std::log(rate) + (shape - 1) * std::log(x) -
                    rate * x - std::lgamma(shape));
  };
  auto cdf = [shape, rate](double x) {
    if (x <= 0) return 0.0;
    // 1 - sum_{k<shape} e^{-rx} (rx)^k / k!
    double term = std::exp(-rate * x), sum = 0.0;
    for (int k = 0; k < shape; ++k) {
      sum += term;
      term *= rate * x / (k + 1);
    }
    return 1.0 - sum;
  };
  return {pdf, cdf, shape / rate};
}

SojournDistribution SojournDistribution::uniform(double lo, double hi) {
  if (!(lo >= 0) || !(hi > lo)) throw InvalidArgument("uniform needs 0 <= lo < hi");
  const double width = hi - lo;
  return {[=](double x) { return (x >= lo && x <= hi) ? 1.0 / width : 0.0; },
          [=](double x) { return std::clamp((x - lo) / width, 0.0, 1.0); },
          0.5 * (lo + hi)};
}

namespace {

void check_normalized(const SojournDistribution& d, const char* name) {
  if (!d.pdf || !d.cdf || !(d.mean > 0)) {
    throw InvalidArgument(std::string(name) + " distribution is incomplete");
  }
  const double upper = 60.0 * d.mean;
  if (std::abs(d.cdf(0.0)) > 1e-9 || std::abs(d.cdf(upper) - 1.0) > 1e-6) {
    throw InvalidArgument(std::string(name) + " distribution cdf is not normalized");
  }
  // Trapezoid mass of the density.
  constexpr int kPoints = 200000;
  const double h = upper / kPoints;
  double mass = 0.5 * (d.pdf(0.0) + d.pdf(upper));
  for (int k = 1; k < kPoints; ++k) mass += d.pdf(k * h);
  mass *= h;
  if (std::abs(mass - 1.0) > 1e-3) {
    throw InvalidArgument(std::string(name) + " distribution density is not normalized");
  }
}

struct Grid {
  int n;
  double h;
};

Grid make_grid(const SojournDistribution& f, const SojournDistribution& b,
               double t, const OracleOptions& opts) {
  const double step = opts.step.value_or(std::min(f.mean, b.mean) / 1000.0);
  if (!(step > 0)) throw InvalidArgument("quadrature step must be > 0");
  if (!(t >= 0)) throw InvalidArgument("time argument must be >= 0");
  if (t == 0) return {0, 0.0};
  const int n = std::max(1, static_cast<int>(std::ceil(t / step - 1e-9)));
  return {n, t / n};
}

}  // namespace

std::vector<double> delta_numeric_curve(const SojournDistribution& free_dist,
                                        const SojournDistribution& busy_dist,
                                        double t, StartState start,
                                        OracleOptions opts) {
  check_normalized(free_dist, "free");
  check_normalized(busy_dist, "busy");
  const auto [n, h] = make_grid(free_dist, busy_dist, t, opts);
  if (n == 0) return {0.0};

  std::vector<double> f1(n + 1), f0(n + 1), surv1(n + 1), surv0(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double x = k * h;
    f1[k] = free_dist.pdf(x);
    f0[k] = busy_dist.pdf(x);
    surv1[k] = 1.0 - free_dist.cdf(x);
    surv0[k] = 1.0 - busy_dist.cdf(x);
  }

  // Fresh-start pair. The k = 0 quadrature node couples the two unknowns at
  // step m, which is resolved by a 2x2 solve.
  std::vector<double> fresh_free(n + 1, 0.0), fresh_busy(n + 1, 0.0);
  const double c1 = 0.5 * h * f1[0];
  const double c0 = 0.5 * h * f0[0];
  for (int m = 1; m <= n; ++m) {
    const double tm = m * h;
    double a = tm * surv1[m];
    double b = 0.0;
    for (int k = 1; k <= m; ++k) {
      const double w = (k == m) ? 0.5 * h : h;
      a += w * f1[k] * (k * h + fresh_busy[m - k]);
      b += w * f0[k] * fresh_free[m - k];
    }
    fresh_free[m] = (a + c1 * b) / (1.0 - c1 * c0);
    fresh_busy[m] = b + c0 * fresh_free[m];
  }

  if (start == StartState::kFreeFresh) return fresh_free;
  if (start == StartState::kBusyFresh) return fresh_busy;

  // Equilibrium starts use the residual-life density (1 - F(x)) / E[T].
  std::vector<double> out(n + 1, 0.0);
  if (start == StartState::kFreeEquilibrium) {
    std::vector<double> g1(n + 1), g1_cum(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) g1[k] = surv1[k] / free_dist.mean;
    for (int k = 1; k <= n; ++k) g1_cum[k] = g1_cum[k - 1] + 0.5 * h * (g1[k - 1] + g1[k]);
    for (int m = 1; m <= n; ++m) {
      const double tm = m * h;
      double acc = tm * (1.0 - g1_cum[m]);
      for (int k = 0; k <= m; ++k) {
        const double w = (k == 0 || k == m) ? 0.5 * h : h;
        acc += w * g1[k] * (k * h + fresh_busy[m - k]);
      }
      out[m] = acc;
    }
  } else {
    std::vector<double> g0(n + 1);
    for (int k = 0; k <= n; ++k) g0[k] = surv0[k] / busy_dist.mean;
    for (int m = 1; m <= n; ++m) {
      double acc = 0.0;
      for (int k = 0; k <= m; ++k) {
        const double w = (k == 0 || k == m) ? 0.5 * h : h;
        acc += w * g0[k] * fresh_free[m - k];
      }
      out[m] = acc;
    }
  }
  return out;
}

double delta_numeric_oracle(const SojournDistribution& free_dist,
                            const SojournDistribution& busy_dist, double t,
                            StartState start, OracleOptions opts) {
  return delta_numeric_curve(free_dist, busy_dist, t, start, opts).back();
}

}  // namespace intersense
