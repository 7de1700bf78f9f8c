#ifndef INTERSENSE_GRID_HPP_
#define INTERSENSE_GRID_HPP_

#include <span>
#include <vector>

#include "intersense/renewal.hpp"

namespace intersense {

/// Search lattice for inter-sensing durations: a coarse uniform pass over
/// [t_min, t_max] followed by refine_levels local passes, each with the step
/// multiplied by refine_shrink and spanning two previous steps either side
/// of the incumbent.
struct GridSpec {
  double t_min = 0;
  double t_max = 0;
  double step = 0;
  int refine_levels = 3;
  double refine_shrink = 0.2;

  /// Throws InvalidArgument unless the invariants hold for this sensing time.
  void validate(double sensing_time) const;

  /// t_min, t_min + step, ... up to t_max.
  std::vector<double> coarse_axis() const;

  /// Points center + j * fine_step inside [t_min, t_max], |j| <= 2 / shrink.
  std::vector<double> refine_axis(double center, double fine_step) const;
};

/// t_min = T_s (or t_max / 10^4 when T_s = 0), t_max = 20 / min(total rate),
/// `divisions` coarse intervals.
GridSpec default_grid(std::span<const ChannelParams> chs, double sensing_time,
                      int divisions = 400, int refine_levels = 3, double refine_shrink = 0.2);

}  // namespace intersense

#endif  // INTERSENSE_GRID_HPP_
