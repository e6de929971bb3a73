// Closed-form capacity region for binary symmetric models, parameterized by
// the test-channel crossover gamma in [0, 0.5]. All quantities are in bits.
#pragma once

#include <iosfwd>
#include <vector>

#include "bis/models.hpp"

namespace bis {

// Region quantities at one gamma:
//   izu       = 1 - H_b(gamma * p_E * p_D)
//   rj_offset = H_b(gamma * p_E * p_D) - H_b(gamma)
//   rl_offset = H_b(gamma * p_E * p_D) - H_b(gamma * p_E)
struct BinaryRegionPoint {
  double gamma_param;
  double izu;
  double rj_offset;
  double rl_offset;
};

BinaryRegionPoint binary_point(double gamma_param, double p_e, double p_d);

// Chosen-key rate rule used by the boundary sweeps: the full I(Z;U) at each
// grid point, or half of it.
enum class RcRule { full_izu, half_izu };

struct BinarySweepRow {
  double gamma;
  double izu;
  double rj_min;
  double rg_max;  // NaN when the rule-derived R_C makes the point infeasible
  bool feasible;
};

// Boundary sweep over a uniform gamma grid on [0, 0.5] (inclusive).
// Infeasible grid points are kept and flagged rather than dropped.
std::vector<BinarySweepRow> boundary_sweep(double p_e, double p_d, double gamma,
                                       double r_i, RcRule r_c_rule,
                                       std::size_t grid_points,
                                       unsigned threads = 1);

// Slack of the two entropy inequalities behind the binary reduction, both
// >= 0 for every test channel and = 0 for binary symmetric ones:
//   eq_zx: H(Z|U) - H_b(H_b^{-1}(H(X|U)) * p_d)
//   eq_xy: H(X|U) - H_b(H_b^{-1}(H(Y|U)) * p_e)
struct MglSlacks {
  double eq_zx;
  double eq_xy;
};

MglSlacks mgl_check(double p_e, double p_d, const TestChannel& test);

// CSV: "# unit: bits", header gamma,izu,rj_min,rg_max,feasible, 12
// significant digits, LF endings.
void write_binary_sweep_csv(std::ostream& os,
                            const std::vector<BinarySweepRow>& rows);

}  // namespace bis
