#include "intersense/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace intersense {

void GridSpec::validate(double sensing_time) const {
  if (!(t_min >= sensing_time) || !(t_min > 0)) {
    throw InvalidArgument("grid t_min must be positive and at least the sensing time");
  }
  if (!(t_max > t_min)) throw InvalidArgument("grid t_max must exceed t_min");
  if (!(step > 0)) throw InvalidArgument("grid step must be > 0");
  if (refine_levels < 0) throw InvalidArgument("grid refine_levels must be >= 0");
  if (!(refine_shrink > 0 && refine_shrink < 1)) {
    throw InvalidArgument("grid refine_shrink must lie in (0, 1)");
  }
}

std::vector<double> GridSpec::coarse_axis() const {
  const auto count = static_cast<long>(std::floor((t_max - t_min) / step + 1e-9));
  std::vector<double> axis;
  axis.reserve(count + 1);
  for (long k = 0; k <= count; ++k) axis.push_back(t_min + k * step);
  return axis;
}

std::vector<double> GridSpec::refine_axis(double center, double fine_step) const {
  const int half = static_cast<int>(std::ceil(2.0 / refine_shrink - 1e-9));
  std::vector<double> axis;
  axis.reserve(2 * half + 1);
  for (int j = -half; j <= half; ++j) {
    const double t = center + j * fine_step;
    if (t >= t_min && t <= t_max) axis.push_back(t);
  }
  return axis;
}

GridSpec default_grid(std::span<const ChannelParams> chs, double sensing_time, int divisions,
                      int refine_levels, double refine_shrink) {
  if (chs.empty()) throw InvalidArgument("default_grid needs at least one channel");
  if (divisions < 1) throw InvalidArgument("default_grid needs divisions >= 1");
  double min_rate = std::numeric_limits<double>::infinity();
  for (const auto& ch : chs) min_rate = std::min(min_rate, ch.total_rate());
  GridSpec g;
  g.t_max = 20.0 / min_rate;
  g.t_min = sensing_time > 0 ? sensing_time : g.t_max * 1e-4;
  if (g.t_min >= g.t_max) throw InvalidArgument("sensing time exceeds the default grid range");
  g.step = (g.t_max - g.t_min) / divisions;
  g.refine_levels = refine_levels;
  g.refine_shrink = refine_shrink;
  return g;
}

}  // namespace intersense
