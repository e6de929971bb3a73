#include "bis/region_binary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bis/parallel.hpp"
#include "bis/region_discrete.hpp"

namespace bis {

namespace {

void check_half_range(double v, const char* what) {
  if (!(v >= 0.0 && v <= 0.5)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 0.5]");
  }
}

std::string sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

BinaryRegionPoint binary_point(double gamma_param, double p_e, double p_d) {
  check_half_range(gamma_param, "gamma");
  check_half_range(p_e, "p_e");
  check_half_range(p_d, "p_d");
  const double cascade = star(star(gamma_param, p_e), p_d);
  const double h_cascade = binary_entropy(cascade, Unit::bits).amount();
  return BinaryRegionPoint{
      gamma_param,
      1.0 - h_cascade,
      h_cascade - binary_entropy(gamma_param, Unit::bits).amount(),
      h_cascade - binary_entropy(star(gamma_param, p_e), Unit::bits).amount(),
  };
}

std::vector<BinarySweepRow> boundary_sweep(double p_e, double p_d, double gamma,
                                       double r_i, RcRule r_c_rule,
                                       std::size_t grid_points,
                                       unsigned threads) {
  if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
  if (!(gamma >= 0.0) || !(r_i >= 0.0)) {
    throw std::invalid_argument("gamma and r_i must be nonnegative");
  }
  check_half_range(p_e, "p_e");
  check_half_range(p_d, "p_d");

  std::vector<BinarySweepRow> rows(grid_points);
  parallel_for(grid_points, threads, [&](std::size_t k) {
    const double g = 0.5 * static_cast<double>(k) /
                     static_cast<double>(grid_points - 1);
    const BinaryRegionPoint pt = binary_point(g, p_e, p_d);
    const double r_c = r_c_rule == RcRule::full_izu ? pt.izu : 0.5 * pt.izu;
    const bool feasible = r_i + r_c <= pt.izu + kFeasibilityTol;
    rows[k] = BinarySweepRow{
        g,
        pt.izu,
        pt.rj_offset + r_i + r_c,
        feasible ? std::max(0.0, max_rg_value(pt.izu, r_i, r_c, gamma))
                 : std::numeric_limits<double>::quiet_NaN(),
        feasible,
    };
  });
  return rows;
}

MglSlacks mgl_check(double p_e, double p_d, const TestChannel& test) {
  check_half_range(p_e, "p_e");
  check_half_range(p_d, "p_d");
  if (test.y_size() != 2) {
    throw std::invalid_argument("mgl_check needs a test channel over binary Y");
  }
  const JointTable joint =
      induced_joint(binary_to_discrete(BinaryBIS(p_e, p_d)), test);
  const std::vector<std::string> given{"U"};
  const double hxu = conditional_entropy(joint, "X", given, Unit::bits).amount();
  const double hyu = conditional_entropy(joint, "Y", given, Unit::bits).amount();
  const double hzu = conditional_entropy(joint, "Z", given, Unit::bits).amount();
  const double bound_zx =
      binary_entropy(star(inv_binary_entropy(std::min(hxu, 1.0)), p_d),
                     Unit::bits)
          .amount();
  const double bound_xy =
      binary_entropy(star(inv_binary_entropy(std::min(hyu, 1.0)), p_e),
                     Unit::bits)
          .amount();
  return MglSlacks{hzu - bound_zx, hxu - bound_xy};
}

void write_binary_sweep_csv(std::ostream& os,
                            const std::vector<BinarySweepRow>& rows) {
  os << "# unit: bits\n";
  os << "gamma,izu,rj_min,rg_max,feasible\n";
  for (const BinarySweepRow& r : rows) {
    os << sig12(r.gamma) << ',' << sig12(r.izu) << ',' << sig12(r.rj_min)
       << ',' << sig12(r.rg_max) << ',' << (r.feasible ? 1 : 0) << '\n';
  }
}

}  // namespace bis
